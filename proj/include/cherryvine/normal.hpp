#ifndef CHERRYVINE_NORMAL_HPP
#define CHERRYVINE_NORMAL_HPP

namespace cherryvine {

/// Standard normal CDF.
double normal_cdf(double z);

/// Standard normal quantile (AS 241, PPND16); relative error below 1e-15
/// across (0,1).
double normal_quantile(double p);

/// log of the standard normal pdf.
double normal_log_pdf(double z);

} // namespace cherryvine

#endif
