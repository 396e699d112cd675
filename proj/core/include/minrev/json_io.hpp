#pragma once

#include <string>

#include "minrev/order.hpp"
#include "minrev/revision.hpp"
#include "minrev/structure.hpp"

namespace minrev {

/// Order files: {"size": m, "leq": [[a, b], ...]} where each pair means
/// a <= b. Diagonal pairs may be omitted (reflexivity is implied on load);
/// transitivity is validated, never repaired. Saving always writes the full
/// relation minus the diagonal.
PartialPreorder order_from_json(const std::string& text);
std::string order_to_json(const PartialPreorder& r);

/// Colored graph files: {"vertices": m, "edges": [[u, v], ...],
/// "colors": {"L1": [...], "L2": [...], "L3": [...]}, "A": [[...], ...]}.
/// "colors" and "A" may be omitted; "A" lists extension color memberships,
/// loaded as colors A1..Al after the layer colors.
RelationalStructure colored_graph_from_json(const std::string& text);
std::string colored_graph_to_json(const RelationalStructure& g);

/// Operator table files: {"n": n, "entries": [{"phi": [...], "result":
/// [...]}]} with model sets as ascending assignment lists. Entries must
/// cover every subset exactly once; n <= 4.
RevisionOperator table_from_json(const std::string& text);
std::string table_to_json(const RevisionOperator& op);

/// DOT renderings for external tools: orders draw their comparability
/// graph, structures their edges with colors as labels.
std::string order_to_dot(const PartialPreorder& r);
std::string structure_to_dot(const RelationalStructure& g);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace minrev
