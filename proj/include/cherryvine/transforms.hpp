#ifndef CHERRYVINE_TRANSFORMS_HPP
#define CHERRYVINE_TRANSFORMS_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "cherryvine/junction_tree.hpp"
#include "cherryvine/vine.hpp"

namespace cherryvine {

/**
 * Answer of the truncated-R-vine test. On a positive verdict the distinct
 * separators, taken as clusters, form the order-(k-1) cherry tree held in
 * separator_tree (empty when the input has a single cluster and hence no
 * separators). On a negative verdict `offender` names a cluster linked
 * through at least three distinct separators.
 */
struct TruncationWitness {
    struct Offender {
        VertexSet cluster;
        std::vector<VertexSet> separators;
    };

    bool verdict = false;
    std::optional<CherryTree> separator_tree;
    std::optional<Offender> offender;
};

/// Thrown when backward() is applied to a cherry tree that is not a
/// truncated R-vine.
class not_truncated_error : public std::runtime_error {
public:
    not_truncated_error(std::string message, TruncationWitness::Offender offender)
        : std::runtime_error(std::move(message)), offender(std::move(offender)) {}
    TruncationWitness::Offender offender;
};

/// Thrown when every deletion choice fails: the input passes the
/// separator-tree test but no sequence exists below it.
class no_sequence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Separator-tree test: verdict true exactly when the distinct separators,
 * taken as clusters, admit a (k-1)-order cherry tree. Decided through
 * junction_tree_exists over the separator set; order-2 trees always pass
 * (their singleton separators trivially form an order-1 tree).
 *
 * This looks one level down only. A positive verdict does not always
 * guarantee a full tree sequence: the separator tree itself can be
 * non-expandable, in which case backward() reports that no valid sequence
 * exists. See the regression tests for a concrete instance.
 */
TruncationWitness is_truncated_rvine(const CherryTree& ct);

/**
 * Independent route to the same verdict: after canonicalization, every
 * cluster may be linked through at most two distinct separators. Used to
 * cross-validate is_truncated_rvine; the two must agree on all inputs.
 */
TruncationWitness two_separator_check(const CherryTree& ct);

/**
 * Backward construction of a full tree sequence under a given top tree.
 * Each step turns the order-m tree into an order-(m-1) tree: the distinct
 * separators become clusters (linked when one cluster of the order-m tree
 * carries both), and each leaf cluster is shrunk by deleting one separator
 * vertex -- the same vertex for all leaves sharing a separator -- and
 * linked to its separator's cluster. Deletion vertices are tried smallest
 * id first, backtracking across levels until the whole sequence validates.
 *
 * The result's top level equals the input (same clusters, same
 * SeparatorTable) and passes validate_sequence. Throws
 * not_truncated_error when the input fails is_truncated_rvine, and
 * no_sequence_error for the rare positives whose separator tree is itself
 * non-expandable.
 */
TruncatedRVine backward(const CherryTree& ct);

/**
 * Order-(k+1) embedding: canonicalizes, roots at the cluster of maximum
 * degree (ties lexicographic), forms one new cluster c ∪ parent(c) per
 * non-root cluster, links child unions to parent unions and star-links the
 * root children's unions through the first child's union. The result is a
 * valid order-(k+1) cherry tree, always a truncated R-vine, and all of its
 * separators are clusters of the input. Throws std::invalid_argument on a
 * single-cluster input.
 */
CherryTree embed(const CherryTree& ct);

} // namespace cherryvine

#endif
