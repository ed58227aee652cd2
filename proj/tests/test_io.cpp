#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cherryvine/fixtures.hpp"
#include "cherryvine/io.hpp"
#include "cherryvine/transforms.hpp"

using namespace cherryvine;

namespace {

const char* kFig3Text =
    "# order-3 tree on six vertices\n"
    "kind cherry-tree\n"
    "order 3\n"
    "vertices 6\n"
    "cluster a: 1 2 3\n"
    "cluster b: 2 3 4\n"
    "cluster c: 2 3 6\n"
    "cluster d: 3 4 5\n"
    "link a b\n"
    "link b c\n"
    "link b d\n";

} // namespace

TEST_CASE("parsing a cherry-tree file") {
    auto structure = parse_structure(kFig3Text);
    auto* ct = std::get_if<CherryTree>(&structure);
    REQUIRE(ct != nullptr);
    CHECK(ct->order == 3);
    CHECK(ct->tree.clusters == fig3_cherry_tree().tree.clusters);
    CHECK(separator_table(ct->tree) == separator_table(fig3_cherry_tree().tree));
}

TEST_CASE("format then parse is the identity on the fixtures") {
    for (ParsedStructure structure :
         {ParsedStructure(fig1c_junction_tree()), ParsedStructure(fig3_cherry_tree()),
          ParsedStructure(fig5_cherry_tree()), ParsedStructure(fig7_cherry_tree()),
          ParsedStructure(example22_vine()),
          ParsedStructure(backward(fig3_cherry_tree()))}) {
        std::string once = format_structure(structure);
        std::string twice = format_structure(parse_structure(once));
        CHECK(once == twice);
    }
}

TEST_CASE("formatting is idempotent on accepted non-canonical files") {
    std::string once = format_structure(parse_structure(kFig3Text));
    std::string twice = format_structure(parse_structure(once));
    CHECK(once == twice);
    CHECK(once.find("cluster c1: 1 2 3") != std::string::npos);
}

TEST_CASE("parsing a vine file") {
    std::string text = format_structure(example22_vine());
    auto structure = parse_structure(text);
    auto* vine = std::get_if<TruncatedRVine>(&structure);
    REQUIRE(vine != nullptr);
    CHECK(vine->truncation_level() == 5);
    CHECK(vine->dimension() == 6);
    CHECK(edge_labels(*vine).size() == 15);
}

TEST_CASE("syntax errors carry line numbers") {
    CHECK_THROWS_AS(parse_structure(""), syntax_error);
    CHECK_THROWS_AS(parse_structure("kind sausage\n"), syntax_error);
    CHECK_THROWS_AS(parse_structure("kind cherry-tree\norder 3\n"), syntax_error);

    try {
        parse_structure("kind junction-tree\nvertices 3\ncluster a 1 2\n");
        FAIL("expected a syntax error");
    } catch (const syntax_error& e) {
        CHECK(e.line == 3);
    }

    try {
        parse_structure("kind junction-tree\nvertices 3\nwhatever\n");
        FAIL("expected a syntax error");
    } catch (const syntax_error& e) {
        CHECK(e.line == 3);
    }
}

TEST_CASE("semantic errors: names, targets, ranges, invariants") {
    CHECK_THROWS_AS(parse_structure("kind junction-tree\nvertices 2\n"
                                    "cluster a: 1 2\ncluster a: 1 2\n"),
                    semantic_error);
    CHECK_THROWS_AS(parse_structure("kind junction-tree\nvertices 2\n"
                                    "cluster a: 1 2\nlink a z\n"),
                    semantic_error);
    CHECK_THROWS_AS(parse_structure("kind junction-tree\nvertices 2\ncluster a: 1 7\n"),
                    semantic_error);
    // parses but violates the running intersection property
    const char* broken =
        "kind junction-tree\nvertices 3\n"
        "cluster a: 1 2\ncluster b: 2 3\ncluster c: 1 3\n"
        "link a b\nlink b c\n";
    CHECK_THROWS_AS(parse_structure(broken), semantic_error);
    auto raw = parse_structure(broken, /*checked=*/false);
    auto* jt = std::get_if<JunctionTree>(&raw);
    REQUIRE(jt != nullptr);
    CHECK_FALSE(check_rip(*jt).ok);
}

TEST_CASE("cherry order mismatches are semantic errors") {
    const char* wrong =
        "kind cherry-tree\norder 4\nvertices 6\n"
        "cluster a: 1 2 3\ncluster b: 2 3 4\ncluster c: 2 3 6\ncluster d: 3 4 5\n"
        "link a b\nlink b c\nlink b d\n";
    CHECK_THROWS_AS(parse_structure(wrong), semantic_error);
}

TEST_CASE("DOT export of a junction tree") {
    std::string dot = emit_dot(fig1c_junction_tree());
    CHECK(dot ==
          "graph junction_tree {\n"
          "  \"1,2,3\";\n"
          "  \"2,3,4\";\n"
          "  \"3,4,5\";\n"
          "  \"1,2,3\" -- \"2,3,4\" [label=\"2,3\"];\n"
          "  \"2,3,4\" -- \"3,4,5\" [label=\"3,4\"];\n"
          "}\n");
}

TEST_CASE("DOT export of a single cluster has no edges") {
    JunctionTree single;
    single.vertices = VertexSet{1, 2};
    single.clusters = {{1, 2}};
    std::string dot = emit_dot(single);
    CHECK(dot == "graph junction_tree {\n  \"1,2\";\n}\n");
}

TEST_CASE("DOT export of a vine has one subgraph per level") {
    std::string dot = emit_dot(backward(fig3_cherry_tree()));
    CHECK(dot.find("subgraph cluster_level1") != std::string::npos);
    CHECK(dot.find("subgraph cluster_level2") != std::string::npos);
    CHECK(dot.find("subgraph cluster_level3") != std::string::npos);
    CHECK(dot.find("label=\"T3\"") != std::string::npos);
}

TEST_CASE("assignment files") {
    TruncatedRVine vine;
    vine.base.vertices = VertexSet{1, 2, 3};
    vine.base.edges = {{1, 2}, {2, 3}};
    JunctionTree t2;
    t2.vertices = VertexSet{1, 2, 3};
    t2.clusters = {{1, 2}, {2, 3}};
    t2.edges = {{0, 1}};
    vine.levels.push_back(validate_cherry(t2, 2));

    const char* good =
        "# three-variable chain\n"
        "pair 1 2 | : gaussian 0.6\n"
        "pair 2 3 | : gaussian 0.5\n"
        "pair 1 3 | 2 : independence\n";
    CopulaAssignment assignment = parse_assignment(good, vine);
    CHECK(assignment.size() == 3);
    REQUIRE(assignment.find(1, 3, VertexSet{2}) != nullptr);
    CHECK(assignment.find(1, 3, VertexSet{2})->family == CopulaFamily::independence);
    CHECK(assignment.find(1, 2, {})->parameter == 0.6);

    CHECK_THROWS_AS(parse_assignment("pair 1 2 | : gaussian 0.6\n", vine), semantic_error);
    CHECK_THROWS_AS(parse_assignment(std::string(good) + "pair 1 2 | 3 : independence\n",
                                     vine),
                    semantic_error);
    CHECK_THROWS_AS(parse_assignment(std::string(good) + "pair 1 2 | : gaussian 0.1\n", vine),
                    semantic_error);
    CHECK_THROWS_AS(parse_assignment("pair 1 2 | : frank 0.5\n", vine), semantic_error);
    CHECK_THROWS_AS(parse_assignment("pair 1 2 : gaussian 0.5\n", vine), syntax_error);
    CHECK_THROWS_AS(parse_assignment("pair 1 2 | : gaussian 2.0\n", vine), semantic_error);
}

TEST_CASE("structures not on vertices 1..d cannot be serialized") {
    JunctionTree odd;
    odd.vertices = VertexSet{2, 3};
    odd.clusters = {{2, 3}};
    CHECK_THROWS_AS(format_structure(ParsedStructure(odd)), std::invalid_argument);
}

TEST_CASE("demo text is available for every name") {
    for (const char* name : {"fig1", "fig3", "fig4", "fig5", "fig7", "example22"})
        CHECK_FALSE(demo_text(name).empty());
    CHECK_THROWS_AS(demo_text("fig9"), std::invalid_argument);

    // fig4 embeds the backward vine; fig7 ends with the parseable embedding
    auto fig4 = parse_structure(demo_text("fig4"));
    CHECK(std::get_if<TruncatedRVine>(&fig4) != nullptr);
    auto fig7 = parse_structure(demo_text("fig7"));
    auto* grown = std::get_if<CherryTree>(&fig7);
    REQUIRE(grown != nullptr);
    CHECK(grown->order == 5);
}
