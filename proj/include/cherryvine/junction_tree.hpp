#ifndef CHERRYVINE_JUNCTION_TREE_HPP
#define CHERRYVINE_JUNCTION_TREE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cherryvine/vertex_set.hpp"

namespace cherryvine {

/// Outcome of a structural validation pass. `clusters` holds the indices of
/// the offending clusters when a check can name them (for the running
/// intersection property: the pair plus the path cluster that misses their
/// intersection). `level` is set by vine-sequence validation.
struct ValidationReport {
    bool ok = true;
    std::string message;
    std::vector<std::size_t> clusters;
    int level = 0;
};

/**
 * Tree of vertex clusters. Edges are unordered cluster-index pairs stored
 * with first < second; the separator of an edge is derived as the
 * intersection of its endpoint clusters.
 */
struct JunctionTree {
    VertexSet vertices;
    std::vector<VertexSet> clusters;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    VertexSet separator(std::size_t edge_index) const;
    std::vector<std::vector<std::size_t>> adjacency() const;
    /// Cluster indices along the unique tree path, endpoints included.
    /// Requires a connected edge set.
    std::vector<std::size_t> path(std::size_t from, std::size_t to) const;

    bool operator==(const JunctionTree&) const = default;
};

/// Distinct separators with multiplicities. nu counts the tree edges
/// carrying the separator, plus one; for cherry trees this equals the
/// number of clusters linked through the separator.
struct SeparatorTable {
    struct Entry {
        VertexSet separator;
        int multiplicity = 0;
        bool operator==(const Entry&) const = default;
    };
    std::vector<Entry> entries; // sorted by separator

    int multiplicity_of(const VertexSet& s) const;
    bool operator==(const SeparatorTable&) const = default;
};

/// Junction tree with all clusters of one size and all separators one
/// smaller. Construct through validate_cherry.
struct CherryTree {
    JunctionTree tree;
    int order = 0;

    bool operator==(const CherryTree&) const = default;
};

/**
 * Full structural validation: edge list forms a tree on the clusters, no
 * cluster is contained in another, the union of clusters equals the
 * declared vertex set, and the running intersection property holds (for
 * every cluster pair, their intersection is contained in every cluster on
 * the tree path between them).
 *
 * Malformed edges (out-of-range index, self-loop, duplicate) throw
 * std::invalid_argument; property failures come back in the report.
 */
ValidationReport check_rip(const JunctionTree& jt);

/// Requires check_rip to pass.
SeparatorTable separator_table(const JunctionTree& jt);

/// Checks cluster sizes == order and separator sizes == order-1 on top of
/// check_rip; throws std::invalid_argument naming the offender otherwise.
CherryTree validate_cherry(const JunctionTree& jt, int order);

/**
 * Re-links every group of equal-separator edges into a star around a hub
 * cluster (the lexicographically smallest cluster touched by the group).
 * Cluster set and SeparatorTable are preserved; output is RIP-valid.
 * Idempotent.
 */
CherryTree canonicalize(const CherryTree& ct);

/**
 * If any junction tree over the given clusters exists, returns one:
 * a maximum-weight spanning tree of the complete cluster graph weighted by
 * pairwise intersection size (ties broken lexicographically by cluster
 * content) is RIP-checked. A cluster set admits a junction tree exactly
 * when such a spanning tree is one, so absence is a definitive answer.
 * Requires a nonempty antichain of clusters.
 */
std::optional<JunctionTree> junction_tree_exists(const std::vector<VertexSet>& clusters);

} // namespace cherryvine

#endif
