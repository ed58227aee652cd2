#include "cherryvine/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cherryvine/normal.hpp"

namespace cherryvine {

namespace {

constexpr double kUnitClamp = 1e-9;

double clamp_unit(double u) { return std::clamp(u, kUnitClamp, 1.0 - kUnitClamp); }

double log_pc_density(const PairCopulaSpec& spec, double u, double v) {
    switch (spec.family) {
        case CopulaFamily::independence:
            return 0.0;
        case CopulaFamily::gaussian: {
            const double r = spec.parameter;
            const double x = normal_quantile(u), y = normal_quantile(v);
            const double q = 1.0 - r * r;
            return -0.5 * std::log(q) - (r * r * (x * x + y * y) - 2.0 * r * x * y) / (2.0 * q);
        }
        case CopulaFamily::clayton: {
            const double t = spec.parameter;
            const double s = std::pow(u, -t) + std::pow(v, -t) - 1.0;
            return std::log1p(t) - (1.0 + t) * std::log(u * v) -
                   (2.0 + 1.0 / t) * std::log(s);
        }
    }
    throw std::logic_error("unknown copula family");
}

void require_unit_interval(double value, const char* name) {
    if (!(value > 0.0 && value < 1.0))
        throw std::invalid_argument(std::string(name) + " must lie in (0,1)");
}

std::vector<std::size_t> zero_based(const VertexSet& vars, std::size_t d,
                                    const char* what) {
    std::vector<std::size_t> idx;
    idx.reserve(vars.size());
    for (int v : vars) {
        if (v < 1 || static_cast<std::size_t>(v) > d)
            throw std::invalid_argument(std::string(what) + ": vertex " + std::to_string(v) +
                                        " is outside 1.." + std::to_string(d));
        idx.push_back(static_cast<std::size_t>(v - 1));
    }
    return idx;
}

double gaussian_block_log_density(const SquareMatrix& block, const std::vector<double>& u) {
    if (block.size() <= 1) return 0.0;
    auto inv = invert(block);
    std::vector<double> z(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) z[i] = normal_quantile(u[i]);
    double quad = 0.0, diag = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        diag += z[i] * z[i];
        for (std::size_t j = 0; j < z.size(); ++j) quad += z[i] * inv.inverse(i, j) * z[j];
    }
    return -0.5 * inv.log_det - 0.5 * (quad - diag);
}

} // namespace

PairCopulaSpec PairCopulaSpec::independence() { return {CopulaFamily::independence, 0.0}; }

PairCopulaSpec PairCopulaSpec::gaussian(double rho) {
    if (!(rho > -1.0 && rho < 1.0))
        throw std::invalid_argument("gaussian correlation must lie in (-1,1)");
    return {CopulaFamily::gaussian, rho};
}

PairCopulaSpec PairCopulaSpec::clayton(double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("clayton parameter must be positive");
    return {CopulaFamily::clayton, theta};
}

double pc_density(const PairCopulaSpec& spec, double u, double v) {
    require_unit_interval(u, "u");
    require_unit_interval(v, "v");
    return std::exp(log_pc_density(spec, u, v));
}

double h_func(const PairCopulaSpec& spec, double u, double v) {
    require_unit_interval(u, "u");
    require_unit_interval(v, "v");
    switch (spec.family) {
        case CopulaFamily::independence:
            return u;
        case CopulaFamily::gaussian: {
            const double r = spec.parameter;
            return normal_cdf((normal_quantile(u) - r * normal_quantile(v)) /
                              std::sqrt(1.0 - r * r));
        }
        case CopulaFamily::clayton: {
            const double t = spec.parameter;
            const double s = std::pow(u, -t) + std::pow(v, -t) - 1.0;
            const double log_h = (-t - 1.0) * std::log(v) - (1.0 + 1.0 / t) * std::log(s);
            return std::clamp(std::exp(log_h), 0.0, 1.0);
        }
    }
    throw std::logic_error("unknown copula family");
}

CorrelationMatrix::CorrelationMatrix(SquareMatrix m) : m_(std::move(m)) {
    if (m_.size() == 0) throw std::invalid_argument("correlation matrix is empty");
    for (std::size_t i = 0; i < m_.size(); ++i) {
        if (m_(i, i) != 1.0)
            throw std::invalid_argument("correlation matrix diagonal must be exactly 1");
        for (std::size_t j = 0; j < i; ++j)
            if (m_(i, j) != m_(j, i))
                throw std::invalid_argument("correlation matrix must be exactly symmetric");
    }
    if (min_cholesky_pivot(m_) <= kPivotFloor)
        throw std::invalid_argument("correlation matrix is not positive definite");
}

SquareMatrix CorrelationMatrix::block(const VertexSet& vars) const {
    return submatrix(m_, zero_based(vars, dimension(), "correlation block"));
}

UnitPoint::UnitPoint(std::vector<double> u) : u_(std::move(u)) {
    if (u_.empty()) throw std::invalid_argument("unit point is empty");
    for (double& x : u_) {
        require_unit_interval(x, "coordinate");
        x = clamp_unit(x);
    }
}

std::vector<double> UnitPoint::sub(const VertexSet& vars) const {
    std::vector<double> out;
    out.reserve(vars.size());
    for (std::size_t i : zero_based(vars, size(), "unit point")) out.push_back(u_[i]);
    return out;
}

void CopulaAssignment::set(const EdgeLabel& label, const PairCopulaSpec& spec) {
    specs_[{label.lo, label.hi, label.conditioning}] = spec;
}

const PairCopulaSpec* CopulaAssignment::find(int lo, int hi,
                                             const VertexSet& conditioning) const {
    auto it = specs_.find({std::min(lo, hi), std::max(lo, hi), conditioning});
    return it == specs_.end() ? nullptr : &it->second;
}

CopulaAssignment CopulaAssignment::independence_for(const TruncatedRVine& vine) {
    CopulaAssignment out;
    for (const auto& label : edge_labels(vine)) out.set(label, PairCopulaSpec::independence());
    return out;
}

CopulaAssignment CopulaAssignment::induced_gaussian(const TruncatedRVine& vine,
                                                    const CorrelationMatrix& sigma) {
    CopulaAssignment out;
    for (const auto& label : edge_labels(vine)) {
        double rho = partial_correlation(sigma, label.lo, label.hi, label.conditioning);
        rho = std::clamp(rho, -1.0 + 1e-12, 1.0 - 1e-12);
        out.set(label, PairCopulaSpec::gaussian(rho));
    }
    return out;
}

VineDensityEvaluator::VineDensityEvaluator(const TruncatedRVine& vine,
                                           const CopulaAssignment& assignment) {
    const int d = vine.dimension();
    std::vector<int> expected(static_cast<std::size_t>(d));
    std::iota(expected.begin(), expected.end(), 1);
    if (vine.base.vertices != VertexSet(expected))
        throw std::invalid_argument("vine vertices must be exactly 1..d");
    auto report = validate_sequence(vine);
    if (!report.ok) throw std::invalid_argument("invalid vine: " + report.message);

    labels_ = edge_labels(vine);
    specs_.reserve(labels_.size());
    std::map<std::tuple<int, int, VertexSet>, PairCopulaSpec> by_key;
    for (const auto& label : labels_) {
        const PairCopulaSpec* spec = assignment.find(label.lo, label.hi, label.conditioning);
        if (!spec)
            throw std::invalid_argument("assignment misses label " + label_text(label));
        specs_.push_back(*spec);
        by_key[{label.lo, label.hi, label.conditioning}] = *spec;
    }
    if (assignment.size() != labels_.size())
        throw std::invalid_argument("assignment carries entries for unknown labels");

    // Resolve every required conditional to a usable pivot, outermost first.
    std::vector<std::pair<int, VertexSet>> pending;
    for (const auto& label : labels_)
        if (label.level >= 2) {
            pending.push_back({label.lo, label.conditioning});
            pending.push_back({label.hi, label.conditioning});
        }
    while (!pending.empty()) {
        auto [x, given] = pending.back();
        pending.pop_back();
        if (given.empty() || plan_.count({x, given})) continue;
        bool resolved = false;
        for (int i : given) {
            VertexSet rest = given;
            rest.erase(i);
            auto it = by_key.find({std::min(x, i), std::max(x, i), rest});
            if (it == by_key.end()) continue;
            plan_[{x, given}] = Conditional{i, it->second};
            pending.push_back({x, rest});
            pending.push_back({i, rest});
            resolved = true;
            break;
        }
        if (!resolved)
            throw std::runtime_error("no realizable pivot for F(" + std::to_string(x) + "|" +
                                     given.str() + "); vine sequence is corrupted");
    }
}

// Conditional CDFs are carried as normal scores. Gaussian and independence
// steps are then exact linear updates, immune to CDF saturation near 0 and
// 1; only Clayton steps round-trip through the unit scale.
double VineDensityEvaluator::conditional_score(
    int x, const VertexSet& given, const UnitPoint& u,
    std::map<std::pair<int, VertexSet>, double>& memo) const {
    if (given.empty()) return normal_quantile(u[static_cast<std::size_t>(x - 1)]);
    auto key = std::make_pair(x, given);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const Conditional& step = plan_.at(key);
    VertexSet rest = given;
    rest.erase(step.pivot);
    const double za = conditional_score(x, rest, u, memo);
    const double zb = conditional_score(step.pivot, rest, u, memo);
    double z = 0.0;
    switch (step.spec.family) {
        case CopulaFamily::independence:
            z = za;
            break;
        case CopulaFamily::gaussian: {
            const double r = step.spec.parameter;
            z = (za - r * zb) / std::sqrt(1.0 - r * r);
            break;
        }
        case CopulaFamily::clayton: {
            const double uu = clamp_unit(normal_cdf(za));
            const double vv = clamp_unit(normal_cdf(zb));
            z = normal_quantile(clamp_unit(h_func(step.spec, uu, vv)));
            break;
        }
    }
    memo.emplace(std::move(key), z);
    return z;
}

double VineDensityEvaluator::log_density(const UnitPoint& u) const {
    std::map<std::pair<int, VertexSet>, double> memo;
    double sum = 0.0;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        const EdgeLabel& label = labels_[i];
        const double za = conditional_score(label.lo, label.conditioning, u, memo);
        const double zb = conditional_score(label.hi, label.conditioning, u, memo);
        const PairCopulaSpec& spec = specs_[i];
        switch (spec.family) {
            case CopulaFamily::independence:
                break;
            case CopulaFamily::gaussian: {
                const double r = spec.parameter;
                const double q = 1.0 - r * r;
                sum += -0.5 * std::log(q) -
                       (r * r * (za * za + zb * zb) - 2.0 * r * za * zb) / (2.0 * q);
                break;
            }
            case CopulaFamily::clayton:
                sum += log_pc_density(spec, clamp_unit(normal_cdf(za)),
                                      clamp_unit(normal_cdf(zb)));
                break;
        }
    }
    return sum;
}

double vine_log_density(const TruncatedRVine& vine, const CopulaAssignment& assignment,
                        const UnitPoint& u) {
    return VineDensityEvaluator(vine, assignment).log_density(u);
}

double gaussian_copula_log_density(const CorrelationMatrix& sigma, const UnitPoint& u) {
    if (u.size() != sigma.dimension())
        throw std::invalid_argument("point dimension does not match the matrix");
    return gaussian_block_log_density(sigma.matrix(), u.coords());
}

CorrelationMatrix markov_projection(const CorrelationMatrix& sigma, const JunctionTree& jt) {
    const std::size_t d = sigma.dimension();
    std::vector<int> expected(d);
    std::iota(expected.begin(), expected.end(), 1);
    if (jt.vertices != VertexSet(expected))
        throw std::invalid_argument("junction tree vertices must be exactly 1..d");
    auto rip = check_rip(jt);
    if (!rip.ok) throw std::invalid_argument("not a junction tree: " + rip.message);

    SquareMatrix precision(d);
    auto accumulate = [&](const VertexSet& vars, double sign) {
        if (vars.empty()) return;
        auto idx = zero_based(vars, d, "markov projection");
        auto inv = invert(submatrix(sigma.matrix(), idx));
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < idx.size(); ++j)
                precision(idx[i], idx[j]) += sign * inv.inverse(i, j);
    };
    for (const auto& cluster : jt.clusters) accumulate(cluster, +1.0);
    for (std::size_t e = 0; e < jt.edges.size(); ++e) accumulate(jt.separator(e), -1.0);

    SquareMatrix cov = invert(precision).inverse;
    std::vector<double> scale(d);
    for (std::size_t i = 0; i < d; ++i) scale[i] = std::sqrt(cov(i, i));
    SquareMatrix out(d);
    for (std::size_t i = 0; i < d; ++i) {
        out(i, i) = 1.0;
        for (std::size_t j = 0; j < i; ++j) {
            double r = 0.5 * (cov(i, j) + cov(j, i)) / (scale[i] * scale[j]);
            out(i, j) = r;
            out(j, i) = r;
        }
    }
    return CorrelationMatrix(out);
}

double cherry_log_density(const JunctionTree& jt, const CorrelationMatrix& sigma,
                          const UnitPoint& u) {
    if (u.size() != sigma.dimension())
        throw std::invalid_argument("point dimension does not match the matrix");
    double sum = 0.0;
    for (const auto& cluster : jt.clusters)
        sum += gaussian_block_log_density(sigma.block(cluster), u.sub(cluster));
    for (std::size_t e = 0; e < jt.edges.size(); ++e) {
        VertexSet sep = jt.separator(e);
        if (sep.empty()) continue;
        sum -= gaussian_block_log_density(sigma.block(sep), u.sub(sep));
    }
    return sum;
}

double cherry_log_density(const CherryTree& ct, const CorrelationMatrix& sigma,
                          const UnitPoint& u) {
    return cherry_log_density(ct.tree, sigma, u);
}

double partial_correlation(const CorrelationMatrix& sigma, int i, int j, const VertexSet& a) {
    if (i == j) throw std::invalid_argument("partial correlation needs two distinct vertices");
    if (a.contains(i) || a.contains(j))
        throw std::invalid_argument("conditioning set must exclude the conditioned pair");
    VertexSet vars = a;
    vars.insert(i);
    vars.insert(j);
    auto idx = zero_based(vars, sigma.dimension(), "partial correlation");
    auto inv = invert(submatrix(sigma.matrix(), idx));
    std::size_t pi = 0, pj = 0;
    const auto& ids = vars.ids();
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (ids[k] == i) pi = k;
        if (ids[k] == j) pj = k;
    }
    return -inv.inverse(pi, pj) /
           std::sqrt(inv.inverse(pi, pi) * inv.inverse(pj, pj));
}

} // namespace cherryvine
