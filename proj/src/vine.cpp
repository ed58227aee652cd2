#include "cherryvine/vine.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace cherryvine {

namespace {

ValidationReport fail(int level, std::string message) {
    ValidationReport r;
    r.ok = false;
    r.level = level;
    r.message = std::move(message);
    return r;
}

std::vector<std::pair<int, int>> normalized_edges(const BaseTree& base) {
    std::vector<std::pair<int, int>> out;
    out.reserve(base.edges.size());
    for (auto [a, b] : base.edges) out.emplace_back(std::min(a, b), std::max(a, b));
    std::sort(out.begin(), out.end());
    return out;
}

ValidationReport check_base_tree(const BaseTree& base) {
    const auto& verts = base.vertices.ids();
    if (verts.empty()) return fail(1, "base tree has no vertices");
    const std::size_t d = verts.size();
    auto edges = normalized_edges(base);
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        return fail(1, "base tree has a duplicate edge");
    if (edges.size() != d - 1)
        return fail(1, "base tree has " + std::to_string(edges.size()) + " edges for " +
                           std::to_string(d) + " vertices");
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : edges) {
        if (a == b) return fail(1, "base tree edge links vertex " + std::to_string(a) +
                                       " to itself");
        if (!base.vertices.contains(a) || !base.vertices.contains(b))
            return fail(1, "base tree edge (" + std::to_string(a) + "," + std::to_string(b) +
                               ") leaves the vertex set");
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::set<int> seen{verts.front()};
    std::queue<int> q;
    q.push(verts.front());
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int n : adj[v])
            if (seen.insert(n).second) q.push(n);
    }
    if (seen.size() != d) return fail(1, "base tree is disconnected");
    return {};
}

} // namespace

std::string label_text(const EdgeLabel& label) {
    std::string out = "c_{" + std::to_string(label.lo) + "," + std::to_string(label.hi);
    if (!label.conditioning.empty()) {
        out += '|';
        bool first = true;
        for (int v : label.conditioning) {
            if (!first) out += ',';
            out += std::to_string(v);
            first = false;
        }
    }
    out += '}';
    return out;
}

ValidationReport validate_sequence(const TruncatedRVine& vine) {
    if (auto base = check_base_tree(vine.base); !base.ok) return base;
    const int d = vine.dimension();

    for (std::size_t i = 0; i < vine.levels.size(); ++i) {
        const int order = static_cast<int>(i) + 2;
        const CherryTree& level = vine.levels[i];
        if (level.order != order)
            return fail(order, "level " + std::to_string(order) + " declares order " +
                                   std::to_string(level.order));
        if (order > d)
            return fail(order, "level " + std::to_string(order) + " exceeds dimension " +
                                   std::to_string(d));
        if (static_cast<int>(level.tree.clusters.size()) != d - order + 1)
            return fail(order, "level " + std::to_string(order) + " has " +
                                   std::to_string(level.tree.clusters.size()) +
                                   " clusters, expected " + std::to_string(d - order + 1));
        try {
            validate_cherry(level.tree, order);
        } catch (const std::exception& e) {
            return fail(order, "level " + std::to_string(order) + ": " + e.what());
        }

        if (order == 2) {
            std::vector<VertexSet> base_pairs;
            for (auto [a, b] : vine.base.edges) base_pairs.push_back(VertexSet{a, b});
            std::sort(base_pairs.begin(), base_pairs.end());
            std::vector<VertexSet> level_clusters = level.tree.clusters;
            std::sort(level_clusters.begin(), level_clusters.end());
            if (base_pairs != level_clusters)
                return fail(2, "level 2 clusters do not match the base tree edges");
        } else {
            const CherryTree& below = vine.levels[i - 1];
            std::set<VertexSet> unions;
            for (auto [a, b] : below.tree.edges)
                unions.insert(set_union(below.tree.clusters[a], below.tree.clusters[b]));
            for (const auto& cluster : level.tree.clusters)
                if (!unions.count(cluster))
                    return fail(order, "cluster " + cluster.str() + " at level " +
                                           std::to_string(order) +
                                           " is not the union of two linked clusters one "
                                           "level below");
        }
    }
    return {};
}

bool proximity_equiv(const TruncatedRVine& vine) {
    if (!check_base_tree(vine.base).ok) return false;
    const int d = vine.dimension();

    std::vector<VertexSet> previous; // clusters one level below
    for (auto [a, b] : vine.base.edges) previous.push_back(VertexSet{a, b});
    std::sort(previous.begin(), previous.end());
    std::vector<std::pair<VertexSet, VertexSet>> previous_links;

    for (std::size_t i = 0; i < vine.levels.size(); ++i) {
        const int order = static_cast<int>(i) + 2;
        const CherryTree& level = vine.levels[i];
        if (level.order != order) return false;
        if (static_cast<int>(level.tree.clusters.size()) != d - order + 1) return false;

        std::vector<VertexSet> clusters = level.tree.clusters;
        std::sort(clusters.begin(), clusters.end());
        if (order == 2) {
            if (clusters != previous) return false;
        } else {
            // every cluster must arise by joining two linked nodes one
            // level below whose symmetric difference has two vertices
            for (const auto& cluster : clusters) {
                bool found = false;
                for (const auto& [x, y] : previous_links)
                    if (set_symmetric_difference(x, y).size() == 2 &&
                        set_union(x, y) == cluster) {
                        found = true;
                        break;
                    }
                if (!found) return false;
            }
        }
        previous_links.clear();
        for (auto [a, b] : level.tree.edges) {
            const VertexSet& ca = level.tree.clusters[a];
            const VertexSet& cb = level.tree.clusters[b];
            if (set_symmetric_difference(ca, cb).size() != 2) return false;
            previous_links.emplace_back(ca, cb);
        }
        previous = clusters;
    }
    return true;
}

std::vector<EdgeLabel> edge_labels(const TruncatedRVine& vine) {
    std::vector<EdgeLabel> labels;
    auto base_edges = normalized_edges(vine.base);
    for (auto [a, b] : base_edges) labels.push_back(EdgeLabel{a, b, {}, 1});

    for (const CherryTree& level : vine.levels) {
        auto edges = level.tree.edges;
        std::sort(edges.begin(), edges.end());
        for (auto [i, j] : edges) {
            const VertexSet& ci = level.tree.clusters[i];
            const VertexSet& cj = level.tree.clusters[j];
            VertexSet sep = set_intersection(ci, cj);
            VertexSet da = set_difference(ci, sep);
            VertexSet db = set_difference(cj, sep);
            if (da.size() != 1 || db.size() != 1)
                throw std::invalid_argument("link " + ci.str() + " -- " + cj.str() +
                                            " does not condition a single pair");
            int a = da.ids().front(), b = db.ids().front();
            labels.push_back(EdgeLabel{std::min(a, b), std::max(a, b), sep, level.order});
        }
    }
    return labels;
}

TruncatedRVine truncate_at(TruncatedRVine vine, int level) {
    if (level < 1) throw std::invalid_argument("truncation level must be at least 1");
    if (static_cast<int>(vine.levels.size()) > level - 1)
        vine.levels.resize(static_cast<std::size_t>(level - 1));
    return vine;
}

} // namespace cherryvine
