#include "cherryvine/io.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace cherryvine {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        std::istringstream stream{std::string(raw)};
        Line line{number, {}};
        std::string token;
        while (stream >> token) line.tokens.push_back(token);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

int parse_int(const std::string& token, int line, const char* what) {
    try {
        std::size_t used = 0;
        int value = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw syntax_error(line, std::string(what) + " expected, got '" + token + "'");
    }
}

VertexSet full_vertex_set(int d) {
    std::vector<int> ids(static_cast<std::size_t>(d));
    std::iota(ids.begin(), ids.end(), 1);
    return VertexSet(ids);
}

struct RawTree {
    std::vector<std::string> names;
    std::vector<VertexSet> clusters;
    std::vector<std::pair<std::size_t, std::size_t>> edges;

    std::size_t add_cluster(const std::string& name, VertexSet cluster, int line) {
        for (const auto& existing : names)
            if (existing == name)
                throw semantic_error(line, "duplicate cluster name '" + name + "'");
        names.push_back(name);
        clusters.push_back(std::move(cluster));
        return clusters.size() - 1;
    }

    std::size_t index_of(const std::string& name, int line) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        throw semantic_error(line, "unknown cluster name '" + name + "'");
    }
};

// `cluster <name>: <id> <id> ...` -- the colon may be glued to the name or
// stand alone.
std::pair<std::string, VertexSet> parse_cluster_line(const Line& line, int d) {
    if (line.tokens.size() < 2) throw syntax_error(line.number, "cluster needs a name");
    std::string name = line.tokens[1];
    std::size_t first_id = 2;
    if (!name.empty() && name.back() == ':') {
        name.pop_back();
    } else if (line.tokens.size() > 2 && line.tokens[2] == ":") {
        first_id = 3;
    } else {
        throw syntax_error(line.number, "expected ':' after the cluster name");
    }
    if (name.empty()) throw syntax_error(line.number, "cluster needs a name");
    std::vector<int> ids;
    for (std::size_t t = first_id; t < line.tokens.size(); ++t)
        ids.push_back(parse_int(line.tokens[t], line.number, "vertex id"));
    if (ids.empty()) throw syntax_error(line.number, "cluster has no vertices");
    for (int v : ids)
        if (v < 1 || v > d)
            throw semantic_error(line.number, "vertex " + std::to_string(v) +
                                                   " is outside 1.." + std::to_string(d));
    try {
        return {name, VertexSet(ids)};
    } catch (const std::exception& e) {
        throw semantic_error(line.number, e.what());
    }
}

JunctionTree build_tree(const RawTree& raw, int d, int kind_line) {
    if (raw.clusters.empty()) throw semantic_error(kind_line, "structure has no clusters");
    JunctionTree jt;
    jt.vertices = full_vertex_set(d);
    jt.clusters = raw.clusters;
    jt.edges = raw.edges;
    for (auto& [a, b] : jt.edges)
        if (a > b) std::swap(a, b);
    std::sort(jt.edges.begin(), jt.edges.end());
    return jt;
}

std::string csv(const VertexSet& s) {
    std::string out;
    for (int v : s) {
        if (!out.empty()) out += ',';
        out += std::to_string(v);
    }
    return out;
}

void format_tree_body(std::ostringstream& out, const JunctionTree& jt) {
    std::vector<std::size_t> perm(jt.clusters.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return jt.clusters[a] < jt.clusters[b]; });
    std::vector<std::size_t> where(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) where[perm[i]] = i;

    for (std::size_t i = 0; i < perm.size(); ++i) {
        out << "cluster c" << i + 1 << ":";
        for (int v : jt.clusters[perm[i]]) out << ' ' << v;
        out << '\n';
    }
    std::vector<std::pair<std::size_t, std::size_t>> links;
    for (auto [a, b] : jt.edges) {
        std::size_t i = where[a], j = where[b];
        links.emplace_back(std::min(i, j), std::max(i, j));
    }
    std::sort(links.begin(), links.end());
    for (auto [i, j] : links) out << "link c" << i + 1 << " c" << j + 1 << '\n';
}

void require_serializable(const VertexSet& vertices) {
    if (vertices.empty() || vertices != full_vertex_set(static_cast<int>(vertices.size())))
        throw std::invalid_argument("only structures on vertices 1..d can be serialized");
}

void dot_tree_body(std::ostringstream& out, const JunctionTree& jt, const std::string& indent) {
    std::vector<std::size_t> perm(jt.clusters.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](std::size_t a, std::size_t b) { return jt.clusters[a] < jt.clusters[b]; });
    for (std::size_t i : perm) out << indent << '"' << csv(jt.clusters[i]) << "\";\n";

    std::vector<std::pair<VertexSet, VertexSet>> links;
    for (auto [a, b] : jt.edges) {
        const auto& ca = jt.clusters[a];
        const auto& cb = jt.clusters[b];
        links.emplace_back(std::min(ca, cb), std::max(ca, cb));
    }
    std::sort(links.begin(), links.end());
    for (const auto& [a, b] : links) {
        VertexSet sep = set_intersection(a, b);
        out << indent << '"' << csv(a) << "\" -- \"" << csv(b) << '"';
        if (!sep.empty()) out << " [label=\"" << csv(sep) << "\"]";
        out << ";\n";
    }
}

} // namespace

ParsedStructure parse_structure(std::string_view text, bool checked) {
    auto lines = tokenize(text);
    if (lines.empty()) throw syntax_error(1, "empty structure file");

    std::size_t at = 0;
    auto next = [&]() -> const Line& { return lines[at]; };
    auto done = [&]() { return at >= lines.size(); };

    const Line& kind_line = next();
    if (kind_line.tokens[0] != "kind" || kind_line.tokens.size() != 2)
        throw syntax_error(kind_line.number, "expected 'kind <cherry-tree|junction-tree|vine>'");
    const std::string kind = kind_line.tokens[1];
    if (kind != "cherry-tree" && kind != "junction-tree" && kind != "vine")
        throw syntax_error(kind_line.number, "unknown kind '" + kind + "'");
    ++at;

    int order = 0, d = 0;
    while (!done() && (next().tokens[0] == "order" || next().tokens[0] == "vertices")) {
        const Line& line = next();
        if (line.tokens.size() != 2)
            throw syntax_error(line.number, "'" + line.tokens[0] + "' takes one value");
        int value = parse_int(line.tokens[1], line.number, line.tokens[0].c_str());
        if (line.tokens[0] == "order") {
            if (kind != "cherry-tree")
                throw syntax_error(line.number, "'order' only applies to cherry-tree files");
            if (order) throw syntax_error(line.number, "duplicate 'order' line");
            if (value < 1) throw semantic_error(line.number, "order must be positive");
            order = value;
        } else {
            if (d) throw syntax_error(line.number, "duplicate 'vertices' line");
            if (value < 1) throw semantic_error(line.number, "vertex count must be positive");
            d = value;
        }
        ++at;
    }
    if (!d) throw syntax_error(kind_line.number, "missing 'vertices' line");
    if (kind == "cherry-tree" && !order)
        throw syntax_error(kind_line.number, "missing 'order' line");

    if (kind == "vine") {
        BaseTree base;
        base.vertices = full_vertex_set(d);
        std::vector<CherryTree> levels;

        int current = 0;
        RawTree raw;
        auto close_level = [&](int closing_line) {
            if (current < 2) return;
            JunctionTree jt = build_tree(raw, d, closing_line);
            levels.push_back(CherryTree{jt, current});
            raw = RawTree{};
        };

        while (!done()) {
            const Line& line = next();
            const std::string& head = line.tokens[0];
            if (head == "level") {
                if (line.tokens.size() != 2)
                    throw syntax_error(line.number, "'level' takes one value");
                int value = parse_int(line.tokens[1], line.number, "level");
                if (value != current + 1)
                    throw semantic_error(line.number,
                                         "levels must be consecutive; expected level " +
                                             std::to_string(current + 1));
                close_level(line.number);
                current = value;
            } else if (head == "edge") {
                if (current != 1)
                    throw syntax_error(line.number, "'edge' lines belong to level 1");
                if (line.tokens.size() != 3)
                    throw syntax_error(line.number, "expected 'edge <a> <b>'");
                int a = parse_int(line.tokens[1], line.number, "vertex id");
                int b = parse_int(line.tokens[2], line.number, "vertex id");
                for (int v : {a, b})
                    if (v < 1 || v > d)
                        throw semantic_error(line.number, "vertex " + std::to_string(v) +
                                                              " is outside 1.." +
                                                              std::to_string(d));
                base.edges.emplace_back(std::min(a, b), std::max(a, b));
            } else if (head == "cluster") {
                if (current < 2)
                    throw syntax_error(line.number, "cluster lines belong to levels >= 2");
                auto [name, cluster] = parse_cluster_line(line, d);
                raw.add_cluster(name, std::move(cluster), line.number);
            } else if (head == "link") {
                if (current < 2)
                    throw syntax_error(line.number, "link lines belong to levels >= 2");
                if (line.tokens.size() != 3)
                    throw syntax_error(line.number, "expected 'link <name> <name>'");
                raw.edges.emplace_back(raw.index_of(line.tokens[1], line.number),
                                       raw.index_of(line.tokens[2], line.number));
            } else {
                throw syntax_error(line.number, "unexpected '" + head + "' in a vine file");
            }
            ++at;
        }
        if (current == 0) throw semantic_error(kind_line.number, "vine file has no levels");
        close_level(lines.back().number);
        std::sort(base.edges.begin(), base.edges.end());

        TruncatedRVine vine{std::move(base), std::move(levels)};
        if (checked) {
            auto report = validate_sequence(vine);
            if (!report.ok) throw semantic_error(0, report.message);
        }
        return vine;
    }

    RawTree raw;
    while (!done()) {
        const Line& line = next();
        const std::string& head = line.tokens[0];
        if (head == "cluster") {
            auto [name, cluster] = parse_cluster_line(line, d);
            raw.add_cluster(name, std::move(cluster), line.number);
        } else if (head == "link") {
            if (line.tokens.size() != 3)
                throw syntax_error(line.number, "expected 'link <name> <name>'");
            raw.edges.emplace_back(raw.index_of(line.tokens[1], line.number),
                                   raw.index_of(line.tokens[2], line.number));
        } else {
            throw syntax_error(line.number, "unexpected '" + head + "' in a " + kind + " file");
        }
        ++at;
    }
    JunctionTree jt = build_tree(raw, d, kind_line.number);

    if (kind == "junction-tree") {
        if (checked) {
            try {
                auto report = check_rip(jt);
                if (!report.ok) throw semantic_error(0, report.message);
            } catch (const std::invalid_argument& e) {
                throw semantic_error(0, e.what());
            }
        }
        return jt;
    }

    if (checked) {
        try {
            return validate_cherry(jt, order);
        } catch (const std::invalid_argument& e) {
            throw semantic_error(0, e.what());
        }
    }
    return CherryTree{jt, order};
}

std::string format_structure(const ParsedStructure& structure) {
    std::ostringstream out;
    if (const auto* jt = std::get_if<JunctionTree>(&structure)) {
        require_serializable(jt->vertices);
        out << "kind junction-tree\n";
        out << "vertices " << jt->vertices.size() << '\n';
        format_tree_body(out, *jt);
    } else if (const auto* ct = std::get_if<CherryTree>(&structure)) {
        require_serializable(ct->tree.vertices);
        out << "kind cherry-tree\n";
        out << "order " << ct->order << '\n';
        out << "vertices " << ct->tree.vertices.size() << '\n';
        format_tree_body(out, ct->tree);
    } else {
        const auto& vine = std::get<TruncatedRVine>(structure);
        require_serializable(vine.base.vertices);
        out << "kind vine\n";
        out << "vertices " << vine.base.vertices.size() << '\n';
        out << "level 1\n";
        auto edges = vine.base.edges;
        for (auto& [a, b] : edges)
            if (a > b) std::swap(a, b);
        std::sort(edges.begin(), edges.end());
        for (auto [a, b] : edges) out << "edge " << a << ' ' << b << '\n';
        for (const auto& level : vine.levels) {
            out << "level " << level.order << '\n';
            format_tree_body(out, level.tree);
        }
    }
    return out.str();
}

std::string emit_dot(const ParsedStructure& structure) {
    std::ostringstream out;
    if (const auto* jt = std::get_if<JunctionTree>(&structure)) {
        out << "graph junction_tree {\n";
        dot_tree_body(out, *jt, "  ");
        out << "}\n";
    } else if (const auto* ct = std::get_if<CherryTree>(&structure)) {
        out << "graph cherry_tree {\n";
        dot_tree_body(out, ct->tree, "  ");
        out << "}\n";
    } else {
        const auto& vine = std::get<TruncatedRVine>(structure);
        out << "graph vine {\n";
        out << "  subgraph cluster_level1 {\n    label=\"T1\";\n";
        for (int v : vine.base.vertices) out << "    \"" << v << "\";\n";
        auto edges = vine.base.edges;
        for (auto& [a, b] : edges)
            if (a > b) std::swap(a, b);
        std::sort(edges.begin(), edges.end());
        for (auto [a, b] : edges) out << "    \"" << a << "\" -- \"" << b << "\";\n";
        out << "  }\n";
        for (const auto& level : vine.levels) {
            out << "  subgraph cluster_level" << level.order << " {\n    label=\"T"
                << level.order << "\";\n";
            dot_tree_body(out, level.tree, "    ");
            out << "  }\n";
        }
        out << "}\n";
    }
    return out.str();
}

CopulaAssignment parse_assignment(std::string_view text, const TruncatedRVine& vine) {
    auto labels = edge_labels(vine);
    std::map<std::tuple<int, int, VertexSet>, EdgeLabel> known;
    for (const auto& label : labels)
        known[{label.lo, label.hi, label.conditioning}] = label;

    CopulaAssignment out;
    std::size_t assigned = 0;
    std::map<std::tuple<int, int, VertexSet>, bool> seen;

    for (const Line& line : tokenize(text)) {
        const auto& tk = line.tokens;
        if (tk[0] != "pair")
            throw syntax_error(line.number, "expected 'pair <a> <b> | <S> : <family> [param]'");
        auto bar = std::find(tk.begin(), tk.end(), "|");
        auto colon = std::find(tk.begin(), tk.end(), ":");
        if (bar == tk.end() || colon == tk.end() || colon < bar)
            throw syntax_error(line.number, "expected '|' and ':' in the label");
        if (bar - tk.begin() != 3)
            throw syntax_error(line.number, "expected exactly two conditioned vertices");
        int a = parse_int(tk[1], line.number, "vertex id");
        int b = parse_int(tk[2], line.number, "vertex id");

        std::vector<int> cond;
        for (auto it = bar + 1; it < colon; ++it) {
            std::string token = *it;
            std::size_t pos = 0;
            while (pos < token.size()) {
                std::size_t comma = token.find(',', pos);
                if (comma == std::string::npos) comma = token.size();
                if (comma > pos)
                    cond.push_back(parse_int(token.substr(pos, comma - pos), line.number,
                                             "conditioning vertex"));
                pos = comma + 1;
            }
        }

        if (colon + 1 == tk.end()) throw syntax_error(line.number, "missing copula family");
        const std::string& family = *(colon + 1);
        std::size_t params = static_cast<std::size_t>(tk.end() - colon) - 2;
        PairCopulaSpec spec;
        try {
            if (family == "independence") {
                if (params != 0)
                    throw std::invalid_argument("independence takes no parameter");
                spec = PairCopulaSpec::independence();
            } else if (family == "gaussian" || family == "clayton") {
                if (params != 1)
                    throw std::invalid_argument(family + " takes exactly one parameter");
                double value = std::stod(*(colon + 2));
                spec = family == "gaussian" ? PairCopulaSpec::gaussian(value)
                                            : PairCopulaSpec::clayton(value);
            } else {
                throw std::invalid_argument("unknown copula family '" + family + "'");
            }
        } catch (const std::exception& e) {
            throw semantic_error(line.number, e.what());
        }

        VertexSet conditioning;
        try {
            conditioning = VertexSet(cond);
        } catch (const std::exception& e) {
            throw semantic_error(line.number, e.what());
        }
        auto key = std::make_tuple(std::min(a, b), std::max(a, b), conditioning);
        auto it = known.find(key);
        if (it == known.end())
            throw semantic_error(line.number,
                                 "label " +
                                     label_text(EdgeLabel{std::min(a, b), std::max(a, b),
                                                          conditioning,
                                                          static_cast<int>(conditioning.size()) +
                                                              1}) +
                                     " does not belong to the vine");
        if (seen[key])
            throw semantic_error(line.number, "duplicate assignment for " +
                                                  label_text(it->second));
        seen[key] = true;
        out.set(it->second, spec);
        ++assigned;
    }

    if (assigned != labels.size())
        for (const auto& label : labels)
            if (!out.find(label.lo, label.hi, label.conditioning))
                throw semantic_error(0, "assignment misses label " + label_text(label));
    return out;
}

} // namespace cherryvine
