#pragma once

#include <string>
#include <vector>

#include "minrev/bits.hpp"
#include "minrev/errors.hpp"
#include "minrev/order.hpp"

namespace minrev {

/// Finite structure with one binary relation and named unary color
/// predicates: the common input of EF games, Hanf checks and the colored
/// graph encoding. `directed` distinguishes order relations from symmetric
/// edge sets; symmetric structures keep adj symmetric and loop-free.
struct RelationalStructure {
  int m = 0;
  bool directed = false;
  std::vector<DynBitset> adj;
  std::vector<std::string> color_names;
  std::vector<DynBitset> colors;

  static RelationalStructure graph(int size);
  static RelationalStructure from_order(const PartialPreorder& r);

  void add_edge(int u, int v);     // symmetric structures; rejects self-loops
  void remove_edge(int u, int v);
  void set_related(int u, int v);  // directed structures
  bool related(int u, int v) const { return adj[u].test(v); }

  int add_color(std::string name);
  int color_index(const std::string& name) const;  // -1 when absent
  bool in_color(int color, int v) const { return colors[color].test(v); }

  bool same_signature(const RelationalStructure& o) const {
    return directed == o.directed && color_names == o.color_names;
  }

  /// Out- and in-neighbors combined, self excluded: the adjacency used for
  /// distances and connectivity.
  DynBitset undirected_neighbors(int v) const;

  int degree(int v) const;
  int component_count() const;

  bool operator==(const RelationalStructure&) const = default;

 private:
  void check_vertex(int v) const;
};

RelationalStructure cycle_structure(int k);
RelationalStructure path_structure(int k);
RelationalStructure disjoint_union(const RelationalStructure& a, const RelationalStructure& b);

/// Isomorphic copy: vertex v becomes perm[v]. perm must be a permutation.
RelationalStructure permuted(const RelationalStructure& s, const std::vector<int>& perm);

}  // namespace minrev
