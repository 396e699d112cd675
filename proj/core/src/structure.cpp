#include "minrev/structure.hpp"

#include <algorithm>
#include <utility>

namespace minrev {

void RelationalStructure::check_vertex(int v) const {
  if (v < 0 || v >= m) throw Error("vertex index out of range");
}

RelationalStructure RelationalStructure::graph(int size) {
  if (size < 0) throw Error("structure size must be nonnegative");
  RelationalStructure s;
  s.m = size;
  s.directed = false;
  s.adj.assign(static_cast<std::size_t>(size), DynBitset(static_cast<std::size_t>(size)));
  return s;
}

RelationalStructure RelationalStructure::from_order(const PartialPreorder& r) {
  RelationalStructure s;
  s.m = r.size();
  s.directed = true;
  s.adj.reserve(static_cast<std::size_t>(s.m));
  for (int a = 0; a < s.m; ++a) s.adj.push_back(r.above(a));
  return s;
}

void RelationalStructure::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (directed) throw Error("add_edge is for symmetric structures; use set_related");
  if (u == v) throw Error("self-loops are not allowed in symmetric structures");
  adj[u].set(v);
  adj[v].set(u);
}

void RelationalStructure::remove_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  adj[u].reset(v);
  if (!directed) adj[v].reset(u);
}

void RelationalStructure::set_related(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (!directed) throw Error("set_related is for directed structures; use add_edge");
  adj[u].set(v);
}

int RelationalStructure::add_color(std::string name) {
  if (color_index(name) >= 0) throw Error("duplicate color name: " + name);
  color_names.push_back(std::move(name));
  colors.emplace_back(static_cast<std::size_t>(m));
  return static_cast<int>(colors.size()) - 1;
}

int RelationalStructure::color_index(const std::string& name) const {
  for (std::size_t i = 0; i < color_names.size(); ++i)
    if (color_names[i] == name) return static_cast<int>(i);
  return -1;
}

DynBitset RelationalStructure::undirected_neighbors(int v) const {
  check_vertex(v);
  DynBitset nb = adj[v];
  if (directed) {
    for (int u = 0; u < m; ++u)
      if (adj[u].test(v)) nb.set(u);
  }
  nb.reset(v);
  return nb;
}

int RelationalStructure::degree(int v) const {
  return static_cast<int>(undirected_neighbors(v).count());
}

int RelationalStructure::component_count() const {
  DynBitset seen(static_cast<std::size_t>(m));
  int count = 0;
  for (int v = 0; v < m; ++v) {
    if (seen.test(v)) continue;
    ++count;
    DynBitset frontier(static_cast<std::size_t>(m));
    frontier.set(v);
    while (frontier.any()) {
      seen |= frontier;
      DynBitset next(static_cast<std::size_t>(m));
      for (int u : frontier.elements()) next |= undirected_neighbors(u);
      next.and_not(seen);
      frontier = next;
    }
  }
  return count;
}

RelationalStructure cycle_structure(int k) {
  if (k < 3) throw Error("a cycle needs at least 3 vertices");
  RelationalStructure s = RelationalStructure::graph(k);
  for (int v = 0; v < k; ++v) s.add_edge(v, (v + 1) % k);
  return s;
}

RelationalStructure path_structure(int k) {
  if (k < 1) throw Error("a path needs at least 1 vertex");
  RelationalStructure s = RelationalStructure::graph(k);
  for (int v = 0; v + 1 < k; ++v) s.add_edge(v, v + 1);
  return s;
}

RelationalStructure disjoint_union(const RelationalStructure& a, const RelationalStructure& b) {
  if (!a.same_signature(b)) throw Error("disjoint union needs matching signatures");
  RelationalStructure s;
  s.m = a.m + b.m;
  s.directed = a.directed;
  s.adj.assign(static_cast<std::size_t>(s.m), DynBitset(static_cast<std::size_t>(s.m)));
  for (int u = 0; u < a.m; ++u)
    for (int v : a.adj[u].elements()) s.adj[u].set(v);
  for (int u = 0; u < b.m; ++u)
    for (int v : b.adj[u].elements()) s.adj[a.m + u].set(a.m + v);
  s.color_names = a.color_names;
  for (std::size_t c = 0; c < a.colors.size(); ++c) {
    DynBitset bits(static_cast<std::size_t>(s.m));
    for (int v : a.colors[c].elements()) bits.set(v);
    for (int v : b.colors[c].elements()) bits.set(a.m + v);
    s.colors.push_back(std::move(bits));
  }
  return s;
}

RelationalStructure permuted(const RelationalStructure& s, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != s.m) throw Error("permutation size mismatch");
  DynBitset hit(static_cast<std::size_t>(s.m));
  for (int img : perm) {
    if (img < 0 || img >= s.m || hit.test(img)) throw Error("not a permutation");
    hit.set(img);
  }
  RelationalStructure out;
  out.m = s.m;
  out.directed = s.directed;
  out.adj.assign(static_cast<std::size_t>(s.m), DynBitset(static_cast<std::size_t>(s.m)));
  for (int u = 0; u < s.m; ++u)
    for (int v : s.adj[u].elements()) out.adj[perm[u]].set(perm[v]);
  out.color_names = s.color_names;
  for (const DynBitset& c : s.colors) {
    DynBitset bits(static_cast<std::size_t>(s.m));
    for (int v : c.elements()) bits.set(perm[v]);
    out.colors.push_back(std::move(bits));
  }
  return out;
}

}  // namespace minrev
