#include "cherryvine/fixtures.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cherryvine/io.hpp"
#include "cherryvine/transforms.hpp"

namespace cherryvine {

namespace {

JunctionTree make_tree(int d, std::vector<VertexSet> clusters,
                       std::vector<std::pair<std::size_t, std::size_t>> edges) {
    JunctionTree jt;
    std::vector<int> ids(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) ids[static_cast<std::size_t>(i)] = i + 1;
    jt.vertices = VertexSet(ids);
    jt.clusters = std::move(clusters);
    jt.edges = std::move(edges);
    return jt;
}

std::string commented(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) out << "# " << line << '\n';
    return out.str();
}

} // namespace

JunctionTree fig1c_junction_tree() {
    return make_tree(5, {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}}, {{0, 1}, {1, 2}});
}

CherryTree fig3_cherry_tree() {
    return validate_cherry(
        make_tree(6, {{1, 2, 3}, {2, 3, 4}, {2, 3, 6}, {3, 4, 5}}, {{0, 1}, {1, 2}, {1, 3}}),
        3);
}

CherryTree fig5_cherry_tree() {
    return validate_cherry(make_tree(7, {{1, 2, 3, 4}, {1, 2, 3, 5}, {1, 2, 4, 7}, {1, 3, 4, 6}},
                                     {{0, 1}, {0, 2}, {0, 3}}),
                           4);
}

CherryTree fig7_cherry_tree() {
    return validate_cherry(
        make_tree(8, {{1, 2, 3, 4}, {2, 3, 4, 5}, {1, 3, 4, 6}, {1, 2, 4, 7}, {3, 4, 5, 8}},
                  {{0, 1}, {0, 2}, {0, 3}, {1, 4}}),
        4);
}

TruncatedRVine example22_vine() {
    TruncatedRVine vine;
    vine.base.vertices = VertexSet{1, 2, 3, 4, 5, 6};
    vine.base.edges = {{1, 2}, {2, 3}, {2, 6}, {3, 4}, {4, 5}};

    auto level = [](int order, std::vector<VertexSet> clusters,
                    std::vector<std::pair<std::size_t, std::size_t>> edges) {
        return validate_cherry(make_tree(6, std::move(clusters), std::move(edges)), order);
    };
    vine.levels.push_back(level(2, {{1, 2}, {2, 3}, {2, 6}, {3, 4}, {4, 5}},
                                {{0, 1}, {1, 2}, {1, 3}, {3, 4}}));
    vine.levels.push_back(
        level(3, {{1, 2, 3}, {2, 3, 4}, {2, 3, 6}, {3, 4, 5}}, {{0, 1}, {1, 2}, {1, 3}}));
    vine.levels.push_back(
        level(4, {{1, 2, 3, 4}, {2, 3, 4, 5}, {2, 3, 4, 6}}, {{0, 1}, {1, 2}}));
    vine.levels.push_back(level(5, {{1, 2, 3, 4, 5}, {2, 3, 4, 5, 6}}, {{0, 1}}));
    return vine;
}

CorrelationMatrix fig3_sigma() {
    SquareMatrix m(6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            m(i, j) = i == j ? 1.0
                             : std::pow(0.6, std::fabs(static_cast<double>(i) -
                                                       static_cast<double>(j)));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < i; ++j) m(i, j) = m(j, i);
    return CorrelationMatrix(m);
}

std::string demo_text(const std::string& name) {
    if (name == "fig1") {
        return "# three-cluster chain; a 3-order cherry tree\n" +
               format_structure(fig1c_junction_tree());
    }
    if (name == "fig3") {
        return format_structure(fig3_cherry_tree());
    }
    if (name == "fig4") {
        return "# tree sequence under the fig3 cherry tree\n" +
               format_structure(backward(fig3_cherry_tree()));
    }
    if (name == "fig5") {
        return "# not a truncated R-vine: {1,2,3,4} carries three distinct separators\n" +
               format_structure(fig5_cherry_tree());
    }
    if (name == "fig7") {
        return "# order-4 input:\n" + commented(format_structure(fig7_cherry_tree())) +
               "# order-5 embedding:\n" + format_structure(embed(fig7_cherry_tree()));
    }
    if (name == "example22") {
        std::string out;
        for (const auto& label : edge_labels(example22_vine())) out += label_text(label) + "\n";
        return out;
    }
    throw std::invalid_argument("unknown demo '" + name +
                                "'; available: fig1 fig3 fig4 fig5 fig7 example22");
}

} // namespace cherryvine
