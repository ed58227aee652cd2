#ifndef CHERRYVINE_IO_HPP
#define CHERRYVINE_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "cherryvine/density.hpp"
#include "cherryvine/junction_tree.hpp"
#include "cherryvine/vine.hpp"

namespace cherryvine {

/// Structure file text could not be tokenized against the grammar.
class syntax_error : public std::runtime_error {
public:
    syntax_error(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}
    int line;
};

/// Structure file parsed but names, references, or invariants are wrong.
class semantic_error : public std::runtime_error {
public:
    semantic_error(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line(line) {}
    int line;
};

using ParsedStructure = std::variant<JunctionTree, CherryTree, TruncatedRVine>;

/**
 * Parses the line-oriented structure grammar ('#' starts a comment):
 *
 *   kind cherry-tree | junction-tree | vine
 *   order <k>            (cherry-tree only)
 *   vertices <d>         (vertex set is 1..d)
 *   cluster <name>: <id> <id> ...
 *   link <name> <name>
 *
 * Vine files carry `level <l>` blocks; level 1 holds `edge <a> <b>` lines,
 * higher levels hold cluster/link lines (names are scoped per level).
 *
 * With `checked` (the default) all structural invariants are enforced and
 * violations raise semantic_error; unchecked parsing resolves names only,
 * so callers can run validators themselves and report.
 */
ParsedStructure parse_structure(std::string_view text, bool checked = true);

/// Canonical formatting: clusters sorted, links normalized and sorted,
/// generated names c1..cn. parse -> format is idempotent and formatted
/// files round-trip byte-identically.
std::string format_structure(const ParsedStructure& structure);

/// DOT text: clusters as nodes, separators as edge labels (sorted comma
/// lists); vines render one subgraph per level.
std::string emit_dot(const ParsedStructure& structure);

/**
 * Assignment file: one line per vine edge label,
 *
 *   pair <a> <b> | <S-comma-list> : <family> [param]
 *
 * with family one of independence, gaussian, clayton. The assignment must
 * cover the vine's labels exactly.
 */
CopulaAssignment parse_assignment(std::string_view text, const TruncatedRVine& vine);

} // namespace cherryvine

#endif
