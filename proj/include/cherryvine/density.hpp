#ifndef CHERRYVINE_DENSITY_HPP
#define CHERRYVINE_DENSITY_HPP

#include <cstddef>
#include <map>
#include <tuple>
#include <vector>

#include "cherryvine/junction_tree.hpp"
#include "cherryvine/linalg.hpp"
#include "cherryvine/vertex_set.hpp"
#include "cherryvine/vine.hpp"

namespace cherryvine {

enum class CopulaFamily { independence, gaussian, clayton };

/// Bivariate copula family plus parameter. Parameters are validated at
/// construction, not at evaluation time.
struct PairCopulaSpec {
    CopulaFamily family = CopulaFamily::independence;
    double parameter = 0.0;

    static PairCopulaSpec independence();
    static PairCopulaSpec gaussian(double rho);  // rho in (-1,1)
    static PairCopulaSpec clayton(double theta); // theta > 0

    bool operator==(const PairCopulaSpec&) const = default;
};

/// Copula density at (u,v), u,v in (0,1).
double pc_density(const PairCopulaSpec& spec, double u, double v);

/// Conditional CDF of the first argument given the second: the partial
/// derivative of the copula CDF in its second slot. Nondecreasing in u.
double h_func(const PairCopulaSpec& spec, double u, double v);

/// Symmetric positive definite with exact unit diagonal; the smallest
/// Cholesky pivot must clear 1e-12. Rows/columns are vertex ids 1..d.
class CorrelationMatrix {
public:
    explicit CorrelationMatrix(SquareMatrix m);

    std::size_t dimension() const { return m_.size(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const SquareMatrix& matrix() const { return m_; }

    /// Marginal block on the given vertex ids (1-based), in sorted order.
    SquareMatrix block(const VertexSet& vars) const;

private:
    SquareMatrix m_;
};

/// Point in the open unit cube; coordinates are clamped into
/// [1e-9, 1-1e-9] so every log density stays finite.
class UnitPoint {
public:
    explicit UnitPoint(std::vector<double> u);

    std::size_t size() const { return u_.size(); }
    double operator[](std::size_t i) const { return u_[i]; }
    const std::vector<double>& coords() const { return u_; }

    /// Coordinates of the given vertex ids (1-based), in sorted order.
    std::vector<double> sub(const VertexSet& vars) const;

private:
    std::vector<double> u_;
};

/// Total map from vine edge labels to pair-copula specs. The simplified
/// form: one spec per label, constant in the conditioning values.
class CopulaAssignment {
public:
    void set(const EdgeLabel& label, const PairCopulaSpec& spec);
    const PairCopulaSpec* find(int lo, int hi, const VertexSet& conditioning) const;
    std::size_t size() const { return specs_.size(); }

    static CopulaAssignment independence_for(const TruncatedRVine& vine);
    /// Gaussian spec per label with the partial correlation of the
    /// conditioned pair given the conditioning set.
    static CopulaAssignment induced_gaussian(const TruncatedRVine& vine,
                                             const CorrelationMatrix& sigma);

private:
    std::map<std::tuple<int, int, VertexSet>, PairCopulaSpec> specs_;
};

/**
 * Evaluates the vine copula log density: the sum over all edge labels of
 * the log pair-copula density at conditional CDF arguments computed by the
 * nested h-function recursion. Construction validates the sequence and the
 * assignment and precomputes, for every required conditional F(x|S), a
 * pivot i in S whose label (x,i|S\{i}) exists one level below; a missing
 * pivot signals a corrupted vine and throws.
 */
class VineDensityEvaluator {
public:
    VineDensityEvaluator(const TruncatedRVine& vine, const CopulaAssignment& assignment);

    double log_density(const UnitPoint& u) const;
    const std::vector<EdgeLabel>& labels() const { return labels_; }

private:
    struct Conditional {
        int pivot;
        PairCopulaSpec spec; // spec of label (x, pivot | given \ {pivot})
    };

    // conditional CDF of x given the set, as a normal score
    double conditional_score(int x, const VertexSet& given, const UnitPoint& u,
                             std::map<std::pair<int, VertexSet>, double>& memo) const;

    std::vector<EdgeLabel> labels_;
    std::vector<PairCopulaSpec> specs_; // parallel to labels_
    std::map<std::pair<int, VertexSet>, Conditional> plan_;
};

double vine_log_density(const TruncatedRVine& vine, const CopulaAssignment& assignment,
                        const UnitPoint& u);

/// log c(u) for the Gaussian copula with correlation matrix S.
double gaussian_copula_log_density(const CorrelationMatrix& sigma, const UnitPoint& u);

/**
 * The Gaussian distribution Markov with respect to the junction tree whose
 * cluster and separator marginals are taken from `sigma`: precision
 * assembled from padded inverses of cluster blocks minus separator blocks
 * (one per tree edge), inverted and rescaled to unit diagonal. Pairs not
 * jointly contained in any cluster end up with zero precision entries.
 * Requires jt vertices be exactly 1..d.
 */
CorrelationMatrix markov_projection(const CorrelationMatrix& sigma, const JunctionTree& jt);

/// Cluster-over-separator Gaussian copula log density of the tree. The
/// caller normally passes a markov_projection output for `sigma`.
double cherry_log_density(const JunctionTree& jt, const CorrelationMatrix& sigma,
                          const UnitPoint& u);
double cherry_log_density(const CherryTree& ct, const CorrelationMatrix& sigma,
                          const UnitPoint& u);

/// Partial correlation of i and j given the set A, via the precision of
/// the marginal block on {i,j} ∪ A.
double partial_correlation(const CorrelationMatrix& sigma, int i, int j, const VertexSet& a);

} // namespace cherryvine

#endif
