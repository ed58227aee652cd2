#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cherryvine/fixtures.hpp"
#include "cherryvine/generate.hpp"
#include "cherryvine/transforms.hpp"

using namespace cherryvine;

namespace {

bool same_clusters(const JunctionTree& a, const JunctionTree& b) {
    auto ca = a.clusters, cb = b.clusters;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    return ca == cb;
}

} // namespace

TEST_CASE("fig3 is a truncated R-vine with separator tree {2,3}-{3,4}") {
    auto witness = is_truncated_rvine(fig3_cherry_tree());
    CHECK(witness.verdict);
    REQUIRE(witness.separator_tree.has_value());
    CHECK_FALSE(witness.offender.has_value());
    const auto& sep = witness.separator_tree->tree;
    CHECK(witness.separator_tree->order == 2);
    REQUIRE(sep.clusters.size() == 2);
    std::vector<VertexSet> expected{{2, 3}, {3, 4}};
    CHECK(same_clusters(sep, JunctionTree{{}, expected, {}}));
    REQUIRE(sep.edges.size() == 1);
    CHECK(sep.separator(0) == VertexSet{3});
}

TEST_CASE("fig5 is not a truncated R-vine; the hub is the offender") {
    auto witness = is_truncated_rvine(fig5_cherry_tree());
    CHECK_FALSE(witness.verdict);
    CHECK_FALSE(witness.separator_tree.has_value());
    REQUIRE(witness.offender.has_value());
    CHECK(witness.offender->cluster == VertexSet{1, 2, 3, 4});
    REQUIRE(witness.offender->separators.size() == 3);
    std::vector<VertexSet> expected{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}};
    CHECK(witness.offender->separators == expected);
}

TEST_CASE("a chain with one distinct separator is trivially truncated") {
    JunctionTree chain;
    chain.vertices = VertexSet{1, 2, 3, 4, 6};
    chain.clusters = {{1, 2, 3}, {2, 3, 4}, {2, 3, 6}};
    chain.edges = {{0, 1}, {1, 2}};
    auto witness = is_truncated_rvine(validate_cherry(chain, 3));
    CHECK(witness.verdict);
    REQUIRE(witness.separator_tree.has_value());
    CHECK(witness.separator_tree->tree.clusters == std::vector<VertexSet>{{2, 3}});
    CHECK(witness.separator_tree->tree.edges.empty());
}

TEST_CASE("order-2 cherry trees are always truncated R-vines") {
    StructureGen gen(3);
    for (int t = 0; t < 20; ++t) {
        CherryTree ct = gen.random_cherry_tree(4 + t % 6, 2);
        CHECK(is_truncated_rvine(ct).verdict);
        CHECK(two_separator_check(ct).verdict);
    }
}

TEST_CASE("single-cluster trees are truncated R-vines with an empty witness") {
    JunctionTree single;
    single.vertices = VertexSet{1, 2, 3};
    single.clusters = {{1, 2, 3}};
    auto witness = is_truncated_rvine(validate_cherry(single, 3));
    CHECK(witness.verdict);
    REQUIRE(witness.separator_tree.has_value());
    CHECK(witness.separator_tree->tree.clusters.empty());
}

TEST_CASE("two_separator_check matches the fixtures") {
    auto bad = two_separator_check(fig5_cherry_tree());
    CHECK_FALSE(bad.verdict);
    REQUIRE(bad.offender.has_value());
    CHECK(bad.offender->cluster == VertexSet{1, 2, 3, 4});
    CHECK(bad.offender->separators.size() == 3);

    auto good = two_separator_check(fig3_cherry_tree());
    CHECK(good.verdict);
    REQUIRE(good.separator_tree.has_value());
    CHECK(good.separator_tree->order == 2);
    CHECK(good.separator_tree->tree.clusters.size() == 2);
}

TEST_CASE("path-shaped cherry trees pass the two-separator check") {
    JunctionTree path;
    path.vertices = VertexSet{1, 2, 3, 4, 5, 6};
    path.clusters = {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {4, 5, 6}};
    path.edges = {{0, 1}, {1, 2}, {2, 3}};
    CHECK(two_separator_check(validate_cherry(path, 3)).verdict);
}

TEST_CASE("the two recognition routes agree on random trees") {
    StructureGen gen(101);
    int positive = 0, negative = 0;
    for (int t = 0; t < 300; ++t) {
        int k = 2 + t % 4;
        int d = std::max(k, 4 + t % 7);
        CherryTree ct = gen.random_cherry_tree(d, k);
        auto a = is_truncated_rvine(ct);
        auto b = two_separator_check(ct);
        REQUIRE(a.verdict == b.verdict);
        (a.verdict ? positive : negative)++;
    }
    CHECK(positive > 0);
    CHECK(negative > 0);
}

TEST_CASE("backward on fig3 is deterministic and round-trips") {
    TruncatedRVine vine = backward(fig3_cherry_tree());
    CHECK(validate_sequence(vine).ok);
    CHECK(proximity_equiv(vine));
    CHECK(vine.truncation_level() == 3);

    // the smallest-id deletion rule drops 2 from the {2,3} leaves and 3
    // from the {3,4} leaf
    std::vector<std::pair<int, int>> expected{{1, 3}, {2, 3}, {3, 4}, {3, 6}, {4, 5}};
    CHECK(vine.base.edges == expected);

    const CherryTree& top = vine.levels.back();
    CHECK(same_clusters(top.tree, fig3_cherry_tree().tree));
    CHECK(separator_table(top.tree) == separator_table(fig3_cherry_tree().tree));
}

TEST_CASE("backward on an order-2 tree returns the base directly") {
    JunctionTree pairs;
    pairs.vertices = VertexSet{1, 2, 3, 4};
    pairs.clusters = {{1, 2}, {2, 3}, {2, 4}};
    pairs.edges = {{0, 1}, {1, 2}};
    TruncatedRVine vine = backward(validate_cherry(pairs, 2));
    CHECK(vine.truncation_level() == 2);
    std::vector<std::pair<int, int>> expected{{1, 2}, {2, 3}, {2, 4}};
    CHECK(vine.base.edges == expected);
    CHECK(validate_sequence(vine).ok);
}

TEST_CASE("backward on a single cluster yields the sorted chain") {
    JunctionTree single;
    single.vertices = VertexSet{2, 4, 7};
    single.clusters = {{2, 4, 7}};
    TruncatedRVine vine = backward(validate_cherry(single, 3));
    std::vector<std::pair<int, int>> expected{{2, 4}, {4, 7}};
    CHECK(vine.base.edges == expected);
    CHECK(vine.truncation_level() == 3);
    CHECK(validate_sequence(vine).ok);
    CHECK(vine.levels.back().tree.clusters == std::vector<VertexSet>{{2, 4, 7}});
}

TEST_CASE("backward rejects fig5 with the offender attached") {
    CHECK_THROWS_AS(backward(fig5_cherry_tree()), not_truncated_error);
    try {
        backward(fig5_cherry_tree());
    } catch (const not_truncated_error& e) {
        CHECK(e.offender.cluster == VertexSet{1, 2, 3, 4});
        CHECK(std::string(e.what()).find("{1,2,3,4}") != std::string::npos);
    }
}

TEST_CASE("a separator-tree-positive input can still admit no sequence") {
    // Both one-level criteria accept this tree, but the separator tree's
    // own edge separators {1,6},{1,12},{6,12} form a triangle, so nothing
    // can sit below it; an exhaustive search over all candidate sequences
    // confirms none exists. backward() must refuse rather than fabricate.
    JunctionTree jt;
    jt.vertices = VertexSet{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    jt.clusters = {{1, 6, 11, 12}, {1, 6, 10, 12}, {1, 6, 9, 12},
                   {1, 6, 7, 12},  {1, 6, 7, 8},   {5, 6, 10, 12},
                   {1, 2, 6, 8},   {1, 4, 6, 12},  {1, 3, 4, 12}};
    jt.edges = {{0, 1}, {0, 2}, {1, 3}, {3, 4}, {1, 5}, {4, 6}, {3, 7}, {7, 8}};
    CherryTree ct = validate_cherry(jt, 4);

    auto witness = is_truncated_rvine(ct);
    CHECK(witness.verdict);
    CHECK(two_separator_check(ct).verdict);

    // the recursive obstruction: the separator tree fails the same test
    REQUIRE(witness.separator_tree.has_value());
    CHECK_FALSE(is_truncated_rvine(*witness.separator_tree).verdict);

    CHECK_THROWS_WITH_AS(backward(ct), doctest::Contains("no valid sequence"),
                         no_sequence_error);
}

TEST_CASE("backward round-trips on random truncated-valid trees") {
    StructureGen gen(77);
    for (int t = 0; t < 100; ++t) {
        int k = 3 + t % 3;
        int d = std::max(k + 1, 5 + t % 8); // up to 12
        CherryTree ct = gen.random_truncated_valid(d, k);
        TruncatedRVine vine = backward(ct);
        CHECK(validate_sequence(vine).ok);
        CHECK(proximity_equiv(vine));
        const CherryTree& top = vine.levels.back();
        CHECK(top.order == k);
        CHECK(same_clusters(top.tree, ct.tree));
        CHECK(separator_table(top.tree) == separator_table(ct.tree));
    }
}

TEST_CASE("embedding fig7 produces the expected order-5 tree") {
    CherryTree grown = embed(fig7_cherry_tree());
    CHECK(grown.order == 5);
    std::vector<VertexSet> expected{
        {1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}, {1, 2, 3, 4, 7}, {2, 3, 4, 5, 8}};
    CHECK(grown.tree.clusters == expected);

    auto table = separator_table(grown.tree);
    REQUIRE(table.entries.size() == 2);
    CHECK(table.entries[0].separator == VertexSet{1, 2, 3, 4});
    CHECK(table.entries[0].multiplicity == 3);
    CHECK(table.entries[1].separator == VertexSet{2, 3, 4, 5});
    CHECK(table.entries[1].multiplicity == 2);

    // the joined hub cluster carries exactly the two separators of the
    // embedding construction
    CHECK(is_truncated_rvine(grown).verdict);
}

TEST_CASE("embedding fig5 yields a truncated R-vine") {
    CherryTree grown = embed(fig5_cherry_tree());
    CHECK(grown.order == 5);
    std::vector<VertexSet> expected{{1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}, {1, 2, 3, 4, 7}};
    CHECK(grown.tree.clusters == expected);
    auto table = separator_table(grown.tree);
    REQUIRE(table.entries.size() == 1);
    CHECK(table.entries[0].separator == VertexSet{1, 2, 3, 4});
    CHECK(table.entries[0].multiplicity == 3);
    CHECK(is_truncated_rvine(grown).verdict);
}

TEST_CASE("embedding the three-cluster chain") {
    CherryTree grown = embed(validate_cherry(fig1c_junction_tree(), 3));
    std::vector<VertexSet> expected{{1, 2, 3, 4}, {2, 3, 4, 5}};
    CHECK(grown.tree.clusters == expected);
    CHECK(grown.tree.separator(0) == VertexSet{2, 3, 4});
}

TEST_CASE("embedding edge cases") {
    JunctionTree two;
    two.vertices = VertexSet{1, 2, 3};
    two.clusters = {{1, 2}, {2, 3}};
    two.edges = {{0, 1}};
    CherryTree grown = embed(validate_cherry(two, 2));
    CHECK(grown.tree.clusters == std::vector<VertexSet>{{1, 2, 3}});
    CHECK(grown.tree.edges.empty());
    CHECK(is_truncated_rvine(grown).verdict);

    JunctionTree single;
    single.vertices = VertexSet{1, 2};
    single.clusters = {{1, 2}};
    CHECK_THROWS_AS(embed(validate_cherry(single, 2)), std::invalid_argument);
}

TEST_CASE("embedding is sound on random trees") {
    StructureGen gen(99);
    for (int t = 0; t < 100; ++t) {
        int k = 2 + t % 4;
        int d = std::max(k + 1, 4 + t % 7);
        CherryTree ct = gen.random_cherry_tree(d, k);
        CherryTree grown = embed(ct);

        CHECK(grown.order == k + 1);
        CHECK(grown.tree.clusters.size() == ct.tree.clusters.size() - 1);
        CHECK(is_truncated_rvine(grown).verdict);

        // every separator of the embedding is a cluster of the input, and
        // every input separator is contained in some output separator
        // (vacuous for 2-cluster inputs: the embedding is one cluster)
        auto in_table = separator_table(ct.tree);
        auto out_table = separator_table(grown.tree);
        for (const auto& entry : out_table.entries)
            CHECK(std::count(ct.tree.clusters.begin(), ct.tree.clusters.end(),
                             entry.separator) == 1);
        if (ct.tree.clusters.size() >= 3) {
            for (const auto& entry : in_table.entries) {
                bool contained = false;
                for (const auto& out : out_table.entries)
                    if (out.separator.contains_all(entry.separator)) contained = true;
                CHECK(contained);
            }
        }
    }
}
