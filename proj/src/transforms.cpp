#include "cherryvine/transforms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cherryvine {

namespace {

std::vector<VertexSet> distinct_separators(const JunctionTree& jt) {
    std::vector<VertexSet> seps;
    for (const auto& entry : separator_table(jt).entries) seps.push_back(entry.separator);
    return seps; // already sorted
}

/// Distinct separator values contained in the cluster. For a valid cherry
/// tree this is exactly the set of separators on the cluster's edges,
/// independent of which representation of the tree is stored.
std::vector<VertexSet> contained_separators(const VertexSet& cluster,
                                            const std::vector<VertexSet>& seps) {
    std::vector<VertexSet> out;
    for (const auto& s : seps)
        if (cluster.contains_all(s)) out.push_back(s);
    return out;
}

std::optional<TruncationWitness::Offender> find_offender(const JunctionTree& jt) {
    auto seps = distinct_separators(jt);
    for (const auto& cluster : jt.clusters) {
        auto inside = contained_separators(cluster, seps);
        if (inside.size() >= 3) return TruncationWitness::Offender{cluster, inside};
    }
    return std::nullopt;
}

CherryTree empty_cherry_tree(int order) {
    return CherryTree{JunctionTree{}, order};
}

/// Canonical D-vine over the sorted vertices of one cluster; the top level
/// is the single cluster itself. Covers the d == k corner of backward().
TruncatedRVine d_vine_sequence(const VertexSet& cluster, int order) {
    const auto& v = cluster.ids();
    TruncatedRVine vine;
    vine.base.vertices = cluster;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        vine.base.edges.emplace_back(v[i], v[i + 1]);
    for (int l = 2; l <= order; ++l) {
        JunctionTree jt;
        jt.vertices = cluster;
        for (std::size_t i = 0; i + l <= v.size(); ++i)
            jt.clusters.push_back(
                VertexSet(std::vector<int>(v.begin() + i, v.begin() + i + l)));
        for (std::size_t i = 0; i + 1 < jt.clusters.size(); ++i)
            jt.edges.emplace_back(i, i + 1);
        vine.levels.push_back(CherryTree{jt, l});
    }
    return vine;
}

struct LeafGroup {
    VertexSet separator;
    std::vector<VertexSet> leaves; // sorted
};

/// One backward step plus recursion: builds the order-(m-1) tree under
/// `tm`, backtracking over deletion vertices, and returns the levels from
/// order m-1 down to 2. nullopt means no deletion choice yields a valid
/// sequence.
std::optional<std::vector<CherryTree>> build_below(const CherryTree& tm) {
    const int m = tm.order;
    const JunctionTree& jt = tm.tree;
    const auto seps = distinct_separators(jt);
    if (seps.empty()) return std::nullopt; // single cluster; handled by the caller

    std::map<VertexSet, std::size_t> sep_index;
    for (std::size_t i = 0; i < seps.size(); ++i) sep_index[seps[i]] = i;

    // Leaves carry exactly one separator; interior clusters carry two and
    // witness one link of the separator tree. Three or more only happen on
    // inputs that are not truncated R-vines.
    std::map<VertexSet, std::vector<VertexSet>> groups;
    std::set<std::pair<std::size_t, std::size_t>> step1_edges;
    for (const auto& cluster : jt.clusters) {
        auto inside = contained_separators(cluster, seps);
        if (inside.size() == 1) {
            groups[inside.front()].push_back(cluster);
        } else if (inside.size() == 2) {
            std::size_t a = sep_index[inside[0]], b = sep_index[inside[1]];
            step1_edges.insert({std::min(a, b), std::max(a, b)});
        } else {
            return std::nullopt;
        }
    }

    // The separator adjacency must span the separators as a tree. If it
    // carries a cycle, fall back to a maximum-weight spanning subtree
    // (all weights equal here, so the lexicographic order decides) and let
    // the coverage check below reject dropped links.
    std::vector<std::pair<std::size_t, std::size_t>> tree_edges(step1_edges.begin(),
                                                                step1_edges.end());
    {
        std::vector<std::size_t> root(seps.size());
        std::iota(root.begin(), root.end(), 0);
        auto find = [&](std::size_t x) {
            while (root[x] != x) x = root[x] = root[root[x]];
            return x;
        };
        std::vector<std::pair<std::size_t, std::size_t>> kept;
        for (auto [a, b] : tree_edges) {
            std::size_t ra = find(a), rb = find(b);
            if (ra == rb) continue;
            root[ra] = rb;
            kept.push_back({a, b});
        }
        if (kept.size() != seps.size() - 1) return std::nullopt; // disconnected
        tree_edges = std::move(kept);
    }

    std::vector<LeafGroup> leaf_groups;
    for (auto& [sep, leaves] : groups) {
        std::sort(leaves.begin(), leaves.end());
        leaf_groups.push_back({sep, leaves});
    }

    // Unions of linked clusters of the candidate level must reproduce every
    // cluster of tm.
    auto covers = [&](const JunctionTree& below) {
        std::set<VertexSet> unions;
        for (auto [a, b] : below.edges)
            unions.insert(set_union(below.clusters[a], below.clusters[b]));
        for (const auto& cluster : jt.clusters)
            if (!unions.count(cluster)) return false;
        return true;
    };

    // Depth-first search over per-group deletion vertices, smallest id
    // first.
    std::vector<int> choice(leaf_groups.size(), 0);
    std::optional<std::vector<CherryTree>> result;

    auto assemble = [&]() -> std::optional<JunctionTree> {
        JunctionTree below;
        below.vertices = jt.vertices;
        below.clusters = seps;
        std::vector<std::pair<std::size_t, std::size_t>> edges = tree_edges;
        for (std::size_t g = 0; g < leaf_groups.size(); ++g) {
            const auto& group = leaf_groups[g];
            int drop = group.separator.ids()[static_cast<std::size_t>(choice[g])];
            std::size_t anchor = sep_index[group.separator];
            for (const auto& leaf : group.leaves) {
                VertexSet shrunk = leaf;
                shrunk.erase(drop);
                below.clusters.push_back(shrunk);
                edges.emplace_back(below.clusters.size() - 1, anchor);
            }
        }
        std::set<VertexSet> uniq(below.clusters.begin(), below.clusters.end());
        if (uniq.size() != below.clusters.size()) return std::nullopt;
        if (below.clusters.size() != jt.clusters.size() + 1) return std::nullopt;

        // canonical storage order: clusters sorted, edges remapped
        std::vector<std::size_t> perm(below.clusters.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
            return below.clusters[a] < below.clusters[b];
        });
        std::vector<std::size_t> where(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) where[perm[i]] = i;
        std::vector<VertexSet> sorted;
        sorted.reserve(perm.size());
        for (std::size_t i : perm) sorted.push_back(below.clusters[i]);
        below.clusters = std::move(sorted);
        for (auto& [a, b] : edges) {
            a = where[a];
            b = where[b];
            if (a > b) std::swap(a, b);
        }
        std::sort(edges.begin(), edges.end());
        below.edges = std::move(edges);
        return below;
    };

    auto dfs = [&](auto&& self, std::size_t g) -> bool {
        if (g == leaf_groups.size()) {
            auto assembled = assemble();
            if (!assembled) return false;
            CherryTree candidate;
            try {
                candidate = validate_cherry(*assembled, m - 1);
            } catch (const std::exception&) {
                return false;
            }
            if (!covers(candidate.tree)) return false;
            if (m - 1 == 2) {
                result = std::vector<CherryTree>{candidate};
                return true;
            }
            auto deeper = build_below(candidate);
            if (!deeper) return false;
            deeper->insert(deeper->begin(), candidate);
            result = std::move(deeper);
            return true;
        }
        for (choice[g] = 0;
             choice[g] < static_cast<int>(leaf_groups[g].separator.size()); ++choice[g])
            if (self(self, g + 1)) return true;
        return false;
    };

    if (!dfs(dfs, 0)) return std::nullopt;
    return result;
}

} // namespace

TruncationWitness is_truncated_rvine(const CherryTree& ct) {
    TruncationWitness witness;
    auto seps = distinct_separators(ct.tree);
    if (seps.empty()) {
        witness.verdict = true;
        witness.separator_tree = empty_cherry_tree(ct.order - 1);
        return witness;
    }

    if (auto jt = junction_tree_exists(seps)) {
        bool cherry = true;
        try {
            witness.separator_tree = validate_cherry(*jt, ct.order - 1);
        } catch (const std::exception&) {
            cherry = false;
        }
        if (cherry) {
            witness.verdict = true;
            return witness;
        }
        witness.separator_tree.reset();
    }

    witness.verdict = false;
    auto offender = find_offender(ct.tree);
    if (!offender)
        throw std::runtime_error(
            "recognition criteria disagree: separators admit no cherry tree yet every "
            "cluster carries at most two distinct separators");
    witness.offender = std::move(offender);
    return witness;
}

TruncationWitness two_separator_check(const CherryTree& ct) {
    CherryTree canon = canonicalize(ct);
    const JunctionTree& jt = canon.tree;

    std::vector<std::set<VertexSet>> incident(jt.clusters.size());
    for (std::size_t e = 0; e < jt.edges.size(); ++e) {
        VertexSet sep = jt.separator(e);
        incident[jt.edges[e].first].insert(sep);
        incident[jt.edges[e].second].insert(sep);
    }

    TruncationWitness witness;
    for (std::size_t c = 0; c < jt.clusters.size(); ++c) {
        if (incident[c].size() >= 3) {
            witness.verdict = false;
            witness.offender = TruncationWitness::Offender{
                jt.clusters[c],
                std::vector<VertexSet>(incident[c].begin(), incident[c].end())};
            return witness;
        }
    }

    witness.verdict = true;
    auto seps = distinct_separators(jt);
    if (seps.empty()) {
        witness.separator_tree = empty_cherry_tree(ct.order - 1);
        return witness;
    }

    // Witness tree from separator co-residence: two separators are linked
    // when one cluster contains both.
    JunctionTree sep_tree;
    sep_tree.clusters = seps;
    for (const auto& s : seps) sep_tree.vertices = set_union(sep_tree.vertices, s);
    for (std::size_t i = 0; i < seps.size(); ++i)
        for (std::size_t j = i + 1; j < seps.size(); ++j) {
            VertexSet both = set_union(seps[i], seps[j]);
            for (const auto& cluster : jt.clusters)
                if (cluster.contains_all(both)) {
                    sep_tree.edges.emplace_back(i, j);
                    break;
                }
        }
    try {
        witness.separator_tree = validate_cherry(sep_tree, ct.order - 1);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("recognition criteria disagree: separator "
                                             "co-residence does not form a cherry tree: ") +
                                 e.what());
    }
    return witness;
}

TruncatedRVine backward(const CherryTree& ct) {
    auto witness = is_truncated_rvine(ct);
    if (!witness.verdict) {
        const auto& off = *witness.offender;
        std::string msg = "not a truncated R-vine: cluster " + off.cluster.str() +
                          " is linked through " + std::to_string(off.separators.size()) +
                          " distinct separators:";
        for (const auto& s : off.separators) msg += " " + s.str();
        throw not_truncated_error(msg, off);
    }

    TruncatedRVine vine;
    if (ct.tree.clusters.size() == 1) {
        vine = d_vine_sequence(ct.tree.clusters.front(), ct.order);
    } else if (ct.order == 2) {
        vine.base.vertices = ct.tree.vertices;
        for (const auto& pair : ct.tree.clusters)
            vine.base.edges.emplace_back(pair.ids()[0], pair.ids()[1]);
        std::sort(vine.base.edges.begin(), vine.base.edges.end());
        vine.levels = {ct};
    } else {
        auto below = build_below(ct);
        if (!below) throw no_sequence_error("no valid sequence found under " +
                                            std::to_string(ct.order) + "-order cherry tree");
        vine.levels.assign(below->rbegin(), below->rend());
        vine.levels.push_back(ct);
        vine.base.vertices = ct.tree.vertices;
        for (const auto& pair : vine.levels.front().tree.clusters)
            vine.base.edges.emplace_back(pair.ids()[0], pair.ids()[1]);
        std::sort(vine.base.edges.begin(), vine.base.edges.end());
    }

    auto report = validate_sequence(vine);
    if (!report.ok)
        throw std::runtime_error("backward produced an invalid sequence: " + report.message);
    return vine;
}

CherryTree embed(const CherryTree& ct) {
    if (ct.tree.clusters.size() < 2)
        throw std::invalid_argument("nothing to join: cherry tree has a single cluster");

    CherryTree canon = canonicalize(ct);
    const JunctionTree& jt = canon.tree;
    const std::size_t n = jt.clusters.size();
    const auto adj = jt.adjacency();

    std::size_t root = 0;
    for (std::size_t c = 1; c < n; ++c) {
        if (adj[c].size() > adj[root].size() ||
            (adj[c].size() == adj[root].size() && jt.clusters[c] < jt.clusters[root]))
            root = c;
    }

    // rooted orientation, children visited smallest cluster first
    std::vector<std::size_t> parent(n, SIZE_MAX);
    std::vector<std::size_t> order;
    order.reserve(n);
    std::vector<std::size_t> stack{root};
    parent[root] = root;
    while (!stack.empty()) {
        std::size_t c = stack.back();
        stack.pop_back();
        order.push_back(c);
        std::vector<std::size_t> kids;
        for (std::size_t m : adj[c])
            if (parent[m] == SIZE_MAX) kids.push_back(m);
        std::sort(kids.begin(), kids.end(), [&](std::size_t a, std::size_t b) {
            return jt.clusters[a] < jt.clusters[b];
        });
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
            parent[*it] = c;
            stack.push_back(*it);
        }
    }

    std::map<std::size_t, VertexSet> joined; // non-root cluster -> union with parent
    for (std::size_t c = 0; c < n; ++c)
        if (c != root) joined[c] = set_union(jt.clusters[c], jt.clusters[parent[c]]);

    std::vector<std::size_t> root_children;
    for (std::size_t c = 0; c < n; ++c)
        if (c != root && parent[c] == root) root_children.push_back(c);
    std::sort(root_children.begin(), root_children.end(),
              [&](std::size_t a, std::size_t b) { return jt.clusters[a] < jt.clusters[b]; });

    std::vector<std::pair<VertexSet, VertexSet>> links;
    for (std::size_t c = 0; c < n; ++c)
        if (c != root && parent[c] != root) links.emplace_back(joined[c], joined[parent[c]]);
    for (std::size_t i = 1; i < root_children.size(); ++i)
        links.emplace_back(joined[root_children[i]], joined[root_children.front()]);

    JunctionTree out;
    out.vertices = jt.vertices;
    for (const auto& [c, u] : joined) out.clusters.push_back(u);
    std::sort(out.clusters.begin(), out.clusters.end());
    std::map<VertexSet, std::size_t> index;
    for (std::size_t i = 0; i < out.clusters.size(); ++i) index[out.clusters[i]] = i;
    if (index.size() != out.clusters.size())
        throw std::runtime_error("embedding produced duplicate clusters");
    for (const auto& [a, b] : links) {
        std::size_t i = index[a], j = index[b];
        out.edges.emplace_back(std::min(i, j), std::max(i, j));
    }
    std::sort(out.edges.begin(), out.edges.end());

    try {
        return validate_cherry(out, ct.order + 1);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("embedding produced an invalid tree: ") +
                                 e.what());
    }
}

} // namespace cherryvine
