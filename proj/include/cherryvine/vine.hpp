#ifndef CHERRYVINE_VINE_HPP
#define CHERRYVINE_VINE_HPP

#include <string>
#include <utility>
#include <vector>

#include "cherryvine/junction_tree.hpp"
#include "cherryvine/vertex_set.hpp"

namespace cherryvine {

/// Regular tree on the variable indices themselves; edges are vertex-id
/// pairs stored with first < second.
struct BaseTree {
    VertexSet vertices;
    std::vector<std::pair<int, int>> edges;

    bool operator==(const BaseTree&) const = default;
};

/**
 * Vine tree sequence truncated at level k: the base tree T1 plus cherry
 * trees T2..Tk. Level l holds d-l+1 clusters of size l; level 2's clusters
 * are exactly the base edges and every higher-level cluster is the union
 * of two linked clusters one level below. A full (untruncated) R-vine is
 * the k = d-1 case.
 */
struct TruncatedRVine {
    BaseTree base;
    std::vector<CherryTree> levels; // orders 2..k; empty means truncation at level 1

    int truncation_level() const { return levels.empty() ? 1 : levels.back().order; }
    int dimension() const { return static_cast<int>(base.vertices.size()); }

    bool operator==(const TruncatedRVine&) const = default;
};

/// Pair-copula slot of a vine edge: conditioned pair (lo,hi) given the
/// conditioning set. Level-1 edges carry an empty conditioning set so the
/// density layer has one uniform edge currency.
struct EdgeLabel {
    int lo = 0, hi = 0;     // lo < hi
    VertexSet conditioning; // size level-1
    int level = 1;

    auto operator<=>(const EdgeLabel&) const = default;
};

/// "c_{1,4|2,3}"; level-1 labels render as "c_{1,2}".
std::string label_text(const EdgeLabel& label);

/**
 * Checks the three sequence conditions at every level: level 2 mirrors the
 * base edges, each higher cluster is a union of two linked clusters one
 * level below, and each level is a valid cherry tree of its order.
 * Failures name the level and cluster.
 */
ValidationReport validate_sequence(const TruncatedRVine& vine);

/**
 * Independent re-check of the same structure through the proximity
 * condition: every level-l link joins two clusters whose symmetric
 * difference has exactly two vertices, and every level-(l+1) cluster is
 * the union of such a linked pair. Agrees with validate_sequence on all
 * inputs.
 */
bool proximity_equiv(const TruncatedRVine& vine);

/// One label per base edge (level 1) and one per link of every level.
/// Requires validate_sequence to pass.
std::vector<EdgeLabel> edge_labels(const TruncatedRVine& vine);

/// Drops all levels above `level` (level >= 1).
TruncatedRVine truncate_at(TruncatedRVine vine, int level);

} // namespace cherryvine

#endif
