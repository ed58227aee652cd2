#ifndef CHERRYVINE_FIXTURES_HPP
#define CHERRYVINE_FIXTURES_HPP

#include <string>

#include "cherryvine/density.hpp"
#include "cherryvine/junction_tree.hpp"
#include "cherryvine/vine.hpp"

namespace cherryvine {

/// Three-cluster chain {1,2,3} - {2,3,4} - {3,4,5} on five vertices.
JunctionTree fig1c_junction_tree();

/// Order-3 tree {1,2,3}, {2,3,4}, {2,3,6}, {3,4,5} on six vertices; a
/// truncated R-vine.
CherryTree fig3_cherry_tree();

/// Order-4 tree {1,2,3,5}, {1,3,4,6}, {1,2,3,4}, {1,2,4,7}; the hub
/// {1,2,3,4} carries three distinct separators, so this is not a
/// truncated R-vine.
CherryTree fig5_cherry_tree();

/// Order-4 tree on eight vertices whose hub {1,2,3,4} carries three
/// distinct separators and whose neighbor {2,3,4,5} carries a further
/// cluster; its order-5 embedding holds {1,2,3,4,5} with separators
/// {1,2,3,4} and {2,3,4,5}.
CherryTree fig7_cherry_tree();

/// Six-variable vine: base tree edges (1,2),(2,3),(2,6),(3,4),(4,5) with
/// the standard tree sequence up to order 5.
TruncatedRVine example22_vine();

/// Fixed companion correlation matrix for the fig3 fixture:
/// rho_ij = 0.6^|i-j| on six variables.
CorrelationMatrix fig3_sigma();

/// Text shown by the CLI demo subcommand; names: fig1, fig3, fig4, fig5,
/// fig7, example22. Throws std::invalid_argument for anything else.
std::string demo_text(const std::string& name);

} // namespace cherryvine

#endif
