#ifndef CHERRYVINE_GENERATE_HPP
#define CHERRYVINE_GENERATE_HPP

#include <cstdint>
#include <random>

#include "cherryvine/density.hpp"
#include "cherryvine/junction_tree.hpp"

namespace cherryvine {

/**
 * Seeded generator for random structures and matrices, shared by the
 * randomized test suites and the CLI selfcheck.
 */
class StructureGen {
public:
    explicit StructureGen(std::uint64_t seed) : rng_(seed) {}

    /// Valid k-order cherry tree on vertices 1..d (d >= k >= 2), grown one
    /// private vertex at a time; each new cluster links to a uniformly
    /// chosen cluster containing its separator, so chains, stars and mixed
    /// shapes all occur.
    CherryTree random_cherry_tree(int d, int k);

    /// Rejection-samples random_cherry_tree until is_truncated_rvine
    /// accepts AND a backward construction succeeds. The separator-tree
    /// test alone admits rare trees with no sequence below them, so a
    /// successful construction is the certificate of validity. Throws
    /// after max_tries failures.
    CherryTree random_truncated_valid(int d, int k, int max_tries = 2000);

    /// Valid junction tree covering exactly 1..d with cluster sizes up to
    /// max_cluster (>= 2).
    JunctionTree random_junction_tree(int d, int max_cluster);

    CorrelationMatrix random_correlation(int d);
    UnitPoint random_unit_point(int d);

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace cherryvine

#endif
