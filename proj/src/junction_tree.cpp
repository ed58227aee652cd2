#include "cherryvine/junction_tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace cherryvine {

namespace {

void require_well_formed_edges(const JunctionTree& jt) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [a, b] : jt.edges) {
        if (a >= jt.clusters.size() || b >= jt.clusters.size())
            throw std::invalid_argument("edge references a cluster index out of range");
        if (a == b) throw std::invalid_argument("edge links a cluster to itself");
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
            throw std::invalid_argument("duplicate edge between clusters " +
                                        std::to_string(a) + " and " + std::to_string(b));
    }
}

} // namespace

VertexSet JunctionTree::separator(std::size_t edge_index) const {
    const auto& [a, b] = edges.at(edge_index);
    return set_intersection(clusters.at(a), clusters.at(b));
}

std::vector<std::vector<std::size_t>> JunctionTree::adjacency() const {
    std::vector<std::vector<std::size_t>> adj(clusters.size());
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

std::vector<std::size_t> JunctionTree::path(std::size_t from, std::size_t to) const {
    const auto adj = adjacency();
    std::vector<std::size_t> parent(clusters.size(), SIZE_MAX);
    std::queue<std::size_t> q;
    q.push(from);
    parent[from] = from;
    while (!q.empty()) {
        std::size_t c = q.front();
        q.pop();
        if (c == to) break;
        for (std::size_t n : adj[c]) {
            if (parent[n] == SIZE_MAX) {
                parent[n] = c;
                q.push(n);
            }
        }
    }
    if (parent[to] == SIZE_MAX)
        throw std::invalid_argument("no path between clusters; tree is disconnected");
    std::vector<std::size_t> out{to};
    while (out.back() != from) out.push_back(parent[out.back()]);
    std::reverse(out.begin(), out.end());
    return out;
}

int SeparatorTable::multiplicity_of(const VertexSet& s) const {
    for (const auto& e : entries)
        if (e.separator == s) return e.multiplicity;
    return 0;
}

ValidationReport check_rip(const JunctionTree& jt) {
    if (jt.clusters.empty())
        throw std::invalid_argument("junction tree needs at least one cluster");
    require_well_formed_edges(jt);

    const std::size_t n = jt.clusters.size();
    ValidationReport report;

    if (jt.edges.size() != n - 1) {
        report.ok = false;
        report.message = "cluster graph is not a tree: " + std::to_string(jt.edges.size()) +
                         " edges for " + std::to_string(n) + " clusters";
        return report;
    }

    // connectivity; with n-1 edges this also implies acyclicity
    {
        const auto adj = jt.adjacency();
        std::vector<char> seen(n, 0);
        std::queue<std::size_t> q;
        q.push(0);
        seen[0] = 1;
        std::size_t reached = 1;
        while (!q.empty()) {
            std::size_t c = q.front();
            q.pop();
            for (std::size_t m : adj[c])
                if (!seen[m]) {
                    seen[m] = 1;
                    ++reached;
                    q.push(m);
                }
        }
        if (reached != n) {
            report.ok = false;
            report.message = "cluster graph is disconnected";
            return report;
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (jt.clusters[j].contains_all(jt.clusters[i])) {
                report.ok = false;
                report.message = "cluster " + jt.clusters[i].str() +
                                 " is contained in cluster " + jt.clusters[j].str();
                report.clusters = {i, j};
                return report;
            }
        }

    VertexSet covered;
    for (const auto& c : jt.clusters) covered = set_union(covered, c);
    if (covered != jt.vertices) {
        report.ok = false;
        report.message = "union of clusters " + covered.str() +
                         " differs from declared vertex set " + jt.vertices.str();
        return report;
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            VertexSet inter = set_intersection(jt.clusters[i], jt.clusters[j]);
            if (inter.empty()) continue;
            for (std::size_t s : jt.path(i, j)) {
                if (s == i || s == j) continue;
                if (!jt.clusters[s].contains_all(inter)) {
                    report.ok = false;
                    report.message = "running intersection fails: " + jt.clusters[i].str() +
                                     " and " + jt.clusters[j].str() + " intersect in " +
                                     inter.str() + " which is missing from path cluster " +
                                     jt.clusters[s].str();
                    report.clusters = {i, j, s};
                    return report;
                }
            }
        }

    return report;
}

SeparatorTable separator_table(const JunctionTree& jt) {
    std::map<VertexSet, int> edge_count;
    for (std::size_t e = 0; e < jt.edges.size(); ++e) ++edge_count[jt.separator(e)];
    SeparatorTable table;
    for (const auto& [sep, count] : edge_count)
        table.entries.push_back({sep, count + 1});
    return table;
}

CherryTree validate_cherry(const JunctionTree& jt, int order) {
    if (order < 1) throw std::invalid_argument("cherry-tree order must be at least 1");
    auto rip = check_rip(jt);
    if (!rip.ok) throw std::invalid_argument("not a junction tree: " + rip.message);
    for (const auto& c : jt.clusters)
        if (static_cast<int>(c.size()) != order)
            throw std::invalid_argument("cluster " + c.str() + " has size " +
                                        std::to_string(c.size()) + ", expected " +
                                        std::to_string(order));
    for (std::size_t e = 0; e < jt.edges.size(); ++e) {
        VertexSet sep = jt.separator(e);
        if (static_cast<int>(sep.size()) != order - 1)
            throw std::invalid_argument(
                "separator " + sep.str() + " between " + jt.clusters[jt.edges[e].first].str() +
                " and " + jt.clusters[jt.edges[e].second].str() + " has size " +
                std::to_string(sep.size()) + ", expected " + std::to_string(order - 1));
    }
    return CherryTree{jt, order};
}

CherryTree canonicalize(const CherryTree& ct) {
    const auto& jt = ct.tree;
    std::map<VertexSet, std::set<std::size_t>> members;
    for (std::size_t e = 0; e < jt.edges.size(); ++e) {
        VertexSet sep = jt.separator(e);
        members[sep].insert(jt.edges[e].first);
        members[sep].insert(jt.edges[e].second);
    }

    JunctionTree out;
    out.vertices = jt.vertices;
    out.clusters = jt.clusters;
    for (const auto& [sep, group] : members) {
        std::size_t hub = *std::min_element(
            group.begin(), group.end(),
            [&](std::size_t a, std::size_t b) { return jt.clusters[a] < jt.clusters[b]; });
        for (std::size_t m : group) {
            if (m == hub) continue;
            out.edges.emplace_back(std::min(hub, m), std::max(hub, m));
        }
    }
    std::sort(out.edges.begin(), out.edges.end());

    auto rip = check_rip(out);
    if (!rip.ok)
        throw std::runtime_error("canonicalize produced an invalid tree: " + rip.message);
    return CherryTree{out, ct.order};
}

std::optional<JunctionTree> junction_tree_exists(const std::vector<VertexSet>& clusters) {
    if (clusters.empty())
        throw std::invalid_argument("junction_tree_exists needs at least one cluster");
    for (std::size_t i = 0; i < clusters.size(); ++i)
        for (std::size_t j = 0; j < clusters.size(); ++j)
            if (i != j && clusters[j].contains_all(clusters[i]))
                throw std::invalid_argument("clusters are not an antichain: " +
                                            clusters[i].str() + " is contained in " +
                                            clusters[j].str());

    JunctionTree jt;
    jt.clusters = clusters;
    for (const auto& c : clusters) jt.vertices = set_union(jt.vertices, c);

    if (clusters.size() > 1) {
        struct Candidate {
            std::size_t w;
            VertexSet lo, hi;
            std::size_t i, j;
        };
        std::vector<Candidate> cand;
        for (std::size_t i = 0; i < clusters.size(); ++i)
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                std::size_t w = set_intersection(clusters[i], clusters[j]).size();
                if (clusters[i] <= clusters[j])
                    cand.push_back({w, clusters[i], clusters[j], i, j});
                else
                    cand.push_back({w, clusters[j], clusters[i], i, j});
            }
        std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
            if (a.w != b.w) return a.w > b.w;
            if (a.lo != b.lo) return a.lo < b.lo;
            return a.hi < b.hi;
        });

        std::vector<std::size_t> root(clusters.size());
        std::iota(root.begin(), root.end(), 0);
        auto find = [&](std::size_t x) {
            while (root[x] != x) x = root[x] = root[root[x]];
            return x;
        };
        for (const auto& c : cand) {
            std::size_t a = find(c.i), b = find(c.j);
            if (a == b) continue;
            root[a] = b;
            jt.edges.emplace_back(std::min(c.i, c.j), std::max(c.i, c.j));
        }
        std::sort(jt.edges.begin(), jt.edges.end());
    }

    if (!check_rip(jt).ok) return std::nullopt;
    return jt;
}

} // namespace cherryvine
