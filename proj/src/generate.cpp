#include "cherryvine/generate.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cherryvine/transforms.hpp"

namespace cherryvine {

namespace {

int pick(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

} // namespace

CherryTree StructureGen::random_cherry_tree(int d, int k) {
    if (k < 2 || d < k) throw std::invalid_argument("need d >= k >= 2");

    std::vector<int> verts(static_cast<std::size_t>(d));
    std::iota(verts.begin(), verts.end(), 1);
    std::shuffle(verts.begin(), verts.end(), rng_);

    JunctionTree jt;
    jt.vertices = VertexSet(verts);
    jt.clusters.push_back(
        VertexSet(std::vector<int>(verts.begin(), verts.begin() + k)));

    for (int next = k; next < d; ++next) {
        std::size_t donor = static_cast<std::size_t>(
            pick(rng_, 0, static_cast<int>(jt.clusters.size()) - 1));
        const auto& ids = jt.clusters[donor].ids();
        int dropped = ids[static_cast<std::size_t>(pick(rng_, 0, k - 1))];
        VertexSet separator = jt.clusters[donor];
        separator.erase(dropped);

        VertexSet cluster = separator;
        cluster.insert(verts[static_cast<std::size_t>(next)]);

        std::vector<std::size_t> anchors;
        for (std::size_t c = 0; c < jt.clusters.size(); ++c)
            if (jt.clusters[c].contains_all(separator)) anchors.push_back(c);
        std::size_t anchor = anchors[static_cast<std::size_t>(
            pick(rng_, 0, static_cast<int>(anchors.size()) - 1))];

        jt.clusters.push_back(cluster);
        jt.edges.emplace_back(anchor, jt.clusters.size() - 1);
    }
    return validate_cherry(jt, k);
}

CherryTree StructureGen::random_truncated_valid(int d, int k, int max_tries) {
    for (int t = 0; t < max_tries; ++t) {
        CherryTree ct = random_cherry_tree(d, k);
        if (!is_truncated_rvine(ct).verdict) continue;
        try {
            backward(ct);
        } catch (const no_sequence_error&) {
            continue;
        }
        return ct;
    }
    throw std::runtime_error("no truncated-R-vine-valid cherry tree found in " +
                             std::to_string(max_tries) + " tries");
}

JunctionTree StructureGen::random_junction_tree(int d, int max_cluster) {
    if (d < 1 || max_cluster < 2) throw std::invalid_argument("need d >= 1, max_cluster >= 2");

    JunctionTree jt;
    std::vector<int> expected(static_cast<std::size_t>(d));
    std::iota(expected.begin(), expected.end(), 1);
    jt.vertices = VertexSet(expected);

    std::vector<int> fresh(expected);
    std::shuffle(fresh.begin(), fresh.end(), rng_);
    std::size_t used = 0;

    int first = std::min<int>(max_cluster, d);
    first = pick(rng_, 1, first);
    jt.clusters.push_back(
        VertexSet(std::vector<int>(fresh.begin(), fresh.begin() + first)));
    used += static_cast<std::size_t>(first);

    while (used < static_cast<std::size_t>(d)) {
        std::size_t donor = static_cast<std::size_t>(
            pick(rng_, 0, static_cast<int>(jt.clusters.size()) - 1));
        const auto& donor_ids = jt.clusters[donor].ids();
        // proper subset of the donor keeps the antichain property
        int keep = pick(rng_, 0, static_cast<int>(donor_ids.size()) - 1);
        std::vector<int> members(donor_ids);
        std::shuffle(members.begin(), members.end(), rng_);
        members.resize(static_cast<std::size_t>(keep));

        int room = max_cluster - keep;
        int take = std::min<int>(room, static_cast<int>(d - used));
        take = pick(rng_, 1, std::max(1, take));
        for (int t = 0; t < take && used < static_cast<std::size_t>(d); ++t)
            members.push_back(fresh[used++]);

        jt.clusters.push_back(VertexSet(members));
        jt.edges.emplace_back(donor, jt.clusters.size() - 1);
    }

    auto rip = check_rip(jt);
    if (!rip.ok) throw std::runtime_error("generator produced an invalid tree: " + rip.message);
    return jt;
}

CorrelationMatrix StructureGen::random_correlation(int d) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        const std::size_t n = static_cast<std::size_t>(d);
        const std::size_t cols = n + 3;
        std::vector<double> a(n * cols);
        for (double& x : a) x = gauss(rng_);

        SquareMatrix s(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                double dot = 0.0;
                for (std::size_t c = 0; c < cols; ++c) dot += a[i * cols + c] * a[j * cols + c];
                s(i, j) = dot;
                s(j, i) = dot;
            }
        std::vector<double> scale(n);
        for (std::size_t i = 0; i < n; ++i) scale[i] = std::sqrt(s(i, i));
        SquareMatrix out(n);
        for (std::size_t i = 0; i < n; ++i) {
            out(i, i) = 1.0;
            for (std::size_t j = 0; j < i; ++j) {
                double r = s(i, j) / (scale[i] * scale[j]);
                out(i, j) = r;
                out(j, i) = r;
            }
        }
        if (min_cholesky_pivot(out) > 1e-6) return CorrelationMatrix(out);
    }
}

UnitPoint StructureGen::random_unit_point(int d) {
    std::uniform_real_distribution<double> unif(1e-4, 1.0 - 1e-4);
    std::vector<double> u(static_cast<std::size_t>(d));
    for (double& x : u) x = unif(rng_);
    return UnitPoint(u);
}

} // namespace cherryvine
