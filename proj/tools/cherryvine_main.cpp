// cherryvine -- command line front end for cherry-tree / truncated R-vine
// structure algebra and copula density evaluation.
//
// Exit codes: 0 success, 1 domain-negative result (e.g. "not a truncated
// R-vine"), 2 usage or syntax errors, 3 semantic input errors, 4 internal
// errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "cherryvine/density.hpp"
#include "cherryvine/fixtures.hpp"
#include "cherryvine/generate.hpp"
#include "cherryvine/io.hpp"
#include "cherryvine/transforms.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kSemantic = 3;
constexpr int kInternal = 4;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_validate(const std::string& path) {
    using namespace cherryvine;
    auto structure = parse_structure(read_file(path), /*checked=*/false);

    ValidationReport report;
    std::string what;
    if (const auto* jt = std::get_if<JunctionTree>(&structure)) {
        what = "junction-tree";
        try {
            report = check_rip(*jt);
        } catch (const std::invalid_argument& e) {
            throw semantic_error(0, e.what());
        }
    } else if (const auto* ct = std::get_if<CherryTree>(&structure)) {
        what = "cherry-tree (order " + std::to_string(ct->order) + ")";
        try {
            validate_cherry(ct->tree, ct->order);
        } catch (const std::invalid_argument& e) {
            report.ok = false;
            report.message = e.what();
        }
    } else {
        const auto& vine = std::get<TruncatedRVine>(structure);
        what = "vine (truncation level " + std::to_string(vine.truncation_level()) + ")";
        report = validate_sequence(vine);
    }

    if (report.ok) {
        std::cout << what << ": valid\n";
        return kOk;
    }
    std::cout << what << ": invalid\n";
    std::cerr << report.message << '\n';
    return kNegative;
}

cherryvine::CherryTree load_cherry(const std::string& path) {
    using namespace cherryvine;
    auto structure = parse_structure(read_file(path));
    if (auto* ct = std::get_if<CherryTree>(&structure)) return *ct;
    throw semantic_error(0, "expected a cherry-tree file");
}

int run_check(const std::string& path) {
    using namespace cherryvine;
    CherryTree ct = load_cherry(path);
    auto witness = is_truncated_rvine(ct);
    if (witness.verdict) {
        std::cout << "truncated R-vine: yes\n";
        const auto& sep_tree = witness.separator_tree->tree;
        std::cout << "separator tree (order " << witness.separator_tree->order << "):\n";
        for (const auto& cluster : sep_tree.clusters)
            std::cout << "  cluster " << cluster.str() << '\n';
        for (auto [a, b] : sep_tree.edges)
            std::cout << "  link " << sep_tree.clusters[a].str() << " -- "
                      << sep_tree.clusters[b].str() << '\n';
        return kOk;
    }
    std::cout << "truncated R-vine: no\n";
    const auto& off = *witness.offender;
    std::cerr << "not a truncated R-vine: cluster " << off.cluster.str()
              << " is linked through " << off.separators.size() << " distinct separators:";
    for (const auto& s : off.separators) std::cerr << ' ' << s.str();
    std::cerr << '\n';
    return kNegative;
}

int run_backward(const std::string& path) {
    using namespace cherryvine;
    CherryTree ct = load_cherry(path);
    try {
        std::cout << format_structure(backward(ct));
    } catch (const not_truncated_error& e) {
        std::cerr << e.what() << '\n';
        return kNegative;
    } catch (const no_sequence_error& e) {
        std::cerr << e.what() << '\n';
        return kNegative;
    }
    return kOk;
}

int run_embed(const std::string& path) {
    using namespace cherryvine;
    CherryTree ct = load_cherry(path);
    try {
        std::cout << format_structure(embed(ct));
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return kNegative;
    }
    return kOk;
}

int run_density(const std::string& vine_path, const std::string& assign_path,
                const std::string& point_text, bool linear) {
    using namespace cherryvine;
    auto structure = parse_structure(read_file(vine_path));
    auto* vine = std::get_if<TruncatedRVine>(&structure);
    if (!vine) throw semantic_error(0, "expected a vine file");
    CopulaAssignment assignment = parse_assignment(read_file(assign_path), *vine);

    std::vector<double> coords;
    std::size_t pos = 0;
    while (pos <= point_text.size()) {
        std::size_t comma = point_text.find(',', pos);
        if (comma == std::string::npos) comma = point_text.size();
        try {
            coords.push_back(std::stod(point_text.substr(pos, comma - pos)));
        } catch (const std::exception&) {
            throw usage_error("--point expects comma-separated reals");
        }
        pos = comma + 1;
    }
    if (coords.size() != static_cast<std::size_t>(vine->dimension()))
        throw usage_error("--point needs " + std::to_string(vine->dimension()) +
                          " coordinates");
    for (double c : coords)
        if (!(c > 0.0 && c < 1.0)) throw usage_error("--point coordinates must lie in (0,1)");

    double value = vine_log_density(*vine, assignment, UnitPoint(coords));
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", linear ? std::exp(value) : value);
    std::cout << buffer << '\n';
    return kOk;
}

int run_dot(const std::string& path) {
    std::cout << cherryvine::emit_dot(cherryvine::parse_structure(read_file(path)));
    return kOk;
}

int run_demo(const std::string& name) {
    try {
        std::cout << cherryvine::demo_text(name);
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
    return kOk;
}

int run_selfcheck(std::uint64_t seed, int trials) {
    using namespace cherryvine;
    StructureGen gen(seed);
    std::uniform_int_distribution<int> pick_d(5, 10), pick_k(2, 5);
    int equiv_ok = 0, backward_ok = 0, embed_ok = 0, density_ok = 0;
    int backward_runs = 0, density_runs = 0, gaps = 0;

    for (int t = 0; t < trials; ++t) {
        int k = pick_k(gen.rng());
        int d = std::max(k + 1, pick_d(gen.rng()));
        CherryTree ct = gen.random_cherry_tree(d, k);

        auto a = is_truncated_rvine(ct);
        auto b = two_separator_check(ct);
        if (a.verdict == b.verdict) ++equiv_ok;

        if (a.verdict) {
            TruncatedRVine vine;
            bool expandable = true;
            try {
                vine = backward(ct);
            } catch (const no_sequence_error&) {
                // separator-tree-positive but non-expandable; counted, not failed
                ++gaps;
                expandable = false;
            }
            if (expandable) {
                ++backward_runs;
                bool ok = validate_sequence(vine).ok && proximity_equiv(vine);
                std::vector<VertexSet> top = vine.levels.back().tree.clusters;
                std::vector<VertexSet> in = ct.tree.clusters;
                std::sort(top.begin(), top.end());
                std::sort(in.begin(), in.end());
                ok = ok && top == in &&
                     separator_table(vine.levels.back().tree) == separator_table(ct.tree);
                if (ok) ++backward_ok;
            }
        }

        CherryTree grown = embed(ct);
        auto grown_table = separator_table(grown.tree);
        bool grown_ok = grown.order == k + 1 && is_truncated_rvine(grown).verdict;
        for (const auto& entry : grown_table.entries)
            grown_ok = grown_ok && std::count(ct.tree.clusters.begin(), ct.tree.clusters.end(),
                                              entry.separator) == 1;
        if (grown_ok) ++embed_ok;
    }

    // spot check: cherry factorization against the dense Gaussian copula,
    // plus a coarse Monte Carlo check that the density integrates to one
    for (int t = 0; t < 5; ++t) {
        int d = 5;
        JunctionTree jt = gen.random_junction_tree(d, 3);
        CorrelationMatrix sigma = gen.random_correlation(d);
        CorrelationMatrix markov = markov_projection(sigma, jt);
        ++density_runs;
        bool ok = true;
        for (int p = 0; p < 25; ++p) {
            UnitPoint u = gen.random_unit_point(d);
            double lhs = cherry_log_density(jt, markov, u);
            double rhs = gaussian_copula_log_density(markov, u);
            if (std::fabs(lhs - rhs) > 1e-8) ok = false;
        }
        double mc = 0.0;
        const int samples = 20000;
        for (int s = 0; s < samples; ++s)
            mc += std::exp(gaussian_copula_log_density(markov, gen.random_unit_point(d)));
        mc /= samples;
        if (std::fabs(mc - 1.0) > 0.25) ok = false;
        if (ok) ++density_ok;
    }

    std::cout << "recognition equivalence: " << equiv_ok << "/" << trials << '\n';
    std::cout << "backward round trips:    " << backward_ok << "/" << backward_runs
              << " (separator-positive, non-expandable: " << gaps << ")\n";
    std::cout << "embeddings:              " << embed_ok << "/" << trials << '\n';
    std::cout << "density identities:      " << density_ok << "/" << density_runs << '\n';
    bool pass = equiv_ok == trials && backward_ok == backward_runs && embed_ok == trials &&
                density_ok == density_runs;
    std::cout << (pass ? "selfcheck: pass\n" : "selfcheck: FAIL\n");
    return pass ? kOk : kNegative;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cherry-tree / truncated R-vine structure toolkit"};
    app.require_subcommand(1);

    std::string file, assign_file, point_text, demo_name;
    bool linear = false;
    std::uint64_t seed = 1;
    int trials = 200;

    auto* validate = app.add_subcommand("validate", "validate a structure file");
    validate->add_option("file", file)->required();
    auto* check = app.add_subcommand("check", "test a cherry-tree for the truncated "
                                              "R-vine property");
    check->add_option("file", file)->required();
    auto* backward_cmd =
        app.add_subcommand("backward", "derive a tree sequence under a cherry-tree top");
    backward_cmd->add_option("file", file)->required();
    auto* embed_cmd = app.add_subcommand("embed", "join linked clusters into the order-(k+1) "
                                                  "cherry-tree");
    embed_cmd->add_option("file", file)->required();
    auto* density = app.add_subcommand("density", "evaluate a vine copula log density");
    density->add_option("file", file)->required();
    density->add_option("--assign", assign_file, "assignment file")->required();
    density->add_option("--point", point_text, "comma-separated point in (0,1)^d")->required();
    density->add_flag("--linear", linear, "print the density instead of its log");
    auto* dot = app.add_subcommand("dot", "render a structure file as DOT");
    dot->add_option("file", file)->required();
    auto* demo = app.add_subcommand("demo", "print a built-in example");
    demo->add_option("name", demo_name)->required();
    auto* selfcheck = app.add_subcommand("selfcheck", "randomized consistency checks");
    selfcheck->add_option("--seed", seed);
    selfcheck->add_option("--trials", trials)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kUsage;
    }

    try {
        if (validate->parsed()) return run_validate(file);
        if (check->parsed()) return run_check(file);
        if (backward_cmd->parsed()) return run_backward(file);
        if (embed_cmd->parsed()) return run_embed(file);
        if (density->parsed()) return run_density(file, assign_file, point_text, linear);
        if (dot->parsed()) return run_dot(file);
        if (demo->parsed()) return run_demo(demo_name);
        if (selfcheck->parsed()) return run_selfcheck(seed, trials);
    } catch (const cherryvine::syntax_error& e) {
        std::cerr << "syntax error: " << e.what() << '\n';
        return kUsage;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const cherryvine::semantic_error& e) {
        std::cerr << "semantic error: " << e.what() << '\n';
        return kSemantic;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
