#include "minrev/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "minrev/errors.hpp"

namespace minrev {

namespace {

// ordered_json keeps dumped keys in the documented schema order
// ("size" before "leq" and so on) instead of sorting them.
using json = nlohmann::ordered_json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON", 0);
  return j;
}

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ValidationError(std::string("missing or non-integer field \"") + key + "\"");
  return j[key].get<int>();
}

int check_range(std::int64_t v, int m, const char* what) {
  if (v < 0 || v >= m)
    throw ValidationError(std::string(what) + " index out of range: " + std::to_string(v));
  return static_cast<int>(v);
}

std::vector<std::pair<int, int>> read_pairs(const json& arr, int m, const char* what) {
  std::vector<std::pair<int, int>> out;
  if (!arr.is_array()) throw ValidationError(std::string(what) + " must be an array of pairs");
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw ValidationError(std::string(what) + " entries must be integer pairs");
    out.emplace_back(check_range(e[0].get<std::int64_t>(), m, what),
                     check_range(e[1].get<std::int64_t>(), m, what));
  }
  return out;
}

DynBitset read_vertex_set(const json& arr, int m, const char* what) {
  DynBitset out(static_cast<std::size_t>(m));
  if (!arr.is_array()) throw ValidationError(std::string(what) + " must be an integer array");
  for (const json& e : arr) {
    if (!e.is_number_integer())
      throw ValidationError(std::string(what) + " entries must be integers");
    out.set(check_range(e.get<std::int64_t>(), m, what));
  }
  return out;
}

json vertex_set_to_json(const DynBitset& bits) {
  json arr = json::array();
  for (int v : bits.elements()) arr.push_back(v);
  return arr;
}

}  // namespace

PartialPreorder order_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) throw ValidationError("order document must be a JSON object");
  const int m = require_int(j, "size");
  if (m < 0) throw ValidationError("size must be nonnegative");
  if (!j.contains("leq")) throw ValidationError("missing field \"leq\"");
  auto pairs = read_pairs(j["leq"], m, "leq");
  return validate_preorder(relation_rows(m, pairs, true));
}

std::string order_to_json(const PartialPreorder& r) {
  json pairs = json::array();
  for (int a = 0; a < r.size(); ++a)
    for (int b : r.above(a).elements())
      if (a != b) pairs.push_back(json::array({a, b}));
  json j{{"size", r.size()}, {"leq", std::move(pairs)}};
  return j.dump(2) + "\n";
}

RelationalStructure colored_graph_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) throw ValidationError("graph document must be a JSON object");
  const int m = require_int(j, "vertices");
  if (m < 0) throw ValidationError("vertices must be nonnegative");
  RelationalStructure g = RelationalStructure::graph(m);
  if (j.contains("edges"))
    for (auto [u, v] : read_pairs(j["edges"], m, "edge")) {
      if (u == v) throw ValidationError("self-loop rejected: " + std::to_string(u));
      if (!g.adj[static_cast<std::size_t>(u)].test(v)) g.add_edge(u, v);
    }
  if (j.contains("colors")) {
    const json& colors = j["colors"];
    if (!colors.is_object()) throw ValidationError("\"colors\" must be an object");
    // Fixed order keeps signatures comparable regardless of JSON key order.
    for (const char* name : {"L1", "L2", "L3"}) {
      if (!colors.contains(name)) continue;
      const int c = g.add_color(name);
      g.colors[static_cast<std::size_t>(c)] = read_vertex_set(colors[name], m, name);
    }
    for (auto it = colors.begin(); it != colors.end(); ++it)
      if (it.key() != "L1" && it.key() != "L2" && it.key() != "L3")
        throw ValidationError("unknown color \"" + it.key() + "\" (extension colors go in \"A\")");
  }
  if (j.contains("A")) {
    const json& ext = j["A"];
    if (!ext.is_array()) throw ValidationError("\"A\" must be an array of vertex lists");
    int index = 0;
    for (const json& sub : ext) {
      const int c = g.add_color("A" + std::to_string(++index));
      g.colors[static_cast<std::size_t>(c)] = read_vertex_set(sub, m, "A");
    }
  }
  return g;
}

std::string colored_graph_to_json(const RelationalStructure& g) {
  if (g.directed)
    throw Error("colored graph files hold symmetric structures; convert orders separately");
  json edges = json::array();
  for (int u = 0; u < g.m; ++u)
    for (int v : g.adj[static_cast<std::size_t>(u)].elements())
      if (v > u) edges.push_back(json::array({u, v}));
  json colors = json::object();
  json ext = json::array();
  for (std::size_t c = 0; c < g.colors.size(); ++c) {
    const std::string& name = g.color_names[c];
    if (name == "L1" || name == "L2" || name == "L3")
      colors[name] = vertex_set_to_json(g.colors[c]);
    else
      ext.push_back(vertex_set_to_json(g.colors[c]));
  }
  json j{{"vertices", g.m}, {"edges", std::move(edges)}};
  if (!colors.empty()) j["colors"] = std::move(colors);
  if (!ext.empty()) j["A"] = std::move(ext);
  return j.dump(2) + "\n";
}

RevisionOperator table_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.is_object()) throw ValidationError("table document must be a JSON object");
  const int n = require_int(j, "n");
  if (n < 0 || n > 4) throw ValidationError("materialized tables need 0 <= n <= 4");
  if (!j.contains("entries") || !j["entries"].is_array())
    throw ValidationError("missing \"entries\" array");
  const std::size_t count = std::size_t{1} << (std::size_t{1} << n);
  const int space = 1 << n;

  auto read_mask = [&](const json& arr, const char* what) {
    if (!arr.is_array()) throw ValidationError(std::string(what) + " must be an integer array");
    std::uint32_t mask = 0;
    for (const json& e : arr) {
      if (!e.is_number_integer())
        throw ValidationError(std::string(what) + " entries must be integers");
      mask |= 1u << check_range(e.get<std::int64_t>(), space, what);
    }
    return mask;
  };

  std::vector<std::uint32_t> table(count, 0);
  std::vector<bool> seen(count, false);
  for (const json& entry : j["entries"]) {
    if (!entry.is_object() || !entry.contains("phi") || !entry.contains("result"))
      throw ValidationError("each entry needs \"phi\" and \"result\"");
    const std::uint32_t phi = read_mask(entry["phi"], "phi");
    if (seen[phi]) throw ValidationError("duplicate entry for one phi set");
    seen[phi] = true;
    table[phi] = read_mask(entry["result"], "result");
  }
  for (std::size_t i = 0; i < count; ++i)
    if (!seen[i]) throw ValidationError("entries must cover every subset (missing at least one)");
  return RevisionOperator::from_table(n, std::move(table));
}

std::string table_to_json(const RevisionOperator& op) {
  if (!op.materialized()) throw Error("only materialized tables can be saved");
  json entries = json::array();
  const auto& table = op.table();
  const int space = 1 << op.var_count();
  auto mask_to_json = [&](std::uint32_t mask) {
    json arr = json::array();
    for (int a = 0; a < space; ++a)
      if (mask & (1u << a)) arr.push_back(a);
    return arr;
  };
  for (std::size_t phi = 0; phi < table.size(); ++phi)
    entries.push_back(json{{"phi", mask_to_json(static_cast<std::uint32_t>(phi))},
                           {"result", mask_to_json(table[phi])}});
  json j{{"n", op.var_count()}, {"entries", std::move(entries)}};
  return j.dump(2) + "\n";
}

std::string order_to_dot(const PartialPreorder& r) {
  std::ostringstream out;
  out << "graph order {\n";
  DynBitset mins = minimal_elements(r);
  for (int v = 0; v < r.size(); ++v) {
    out << "  n" << v << " [label=\"" << v << "\"";
    if (mins.test(v)) out << ", shape=box";
    out << "];\n";
  }
  for (auto [u, v] : comparability_graph(r).edges()) out << "  n" << u << " -- n" << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string structure_to_dot(const RelationalStructure& g) {
  std::ostringstream out;
  out << (g.directed ? "digraph" : "graph") << " structure {\n";
  for (int v = 0; v < g.m; ++v) {
    out << "  n" << v << " [label=\"" << v;
    for (std::size_t c = 0; c < g.colors.size(); ++c)
      if (g.colors[c].test(v)) out << " " << g.color_names[c];
    out << "\"];\n";
  }
  for (int u = 0; u < g.m; ++u)
    for (int v : g.adj[static_cast<std::size_t>(u)].elements()) {
      if (!g.directed && v < u) continue;
      out << "  n" << u << (g.directed ? " -> n" : " -- n") << v << ";\n";
    }
  out << "}\n";
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

}  // namespace minrev
