#pragma once

#include <string>
#include <utility>
#include <vector>

#include "minrev/bits.hpp"
#include "minrev/errors.hpp"

namespace minrev {

/// A reflexive transitive relation on elements 0..m-1. Instances are always
/// valid: every factory either validates or constructs a closure.
class PartialPreorder {
 public:
  PartialPreorder() = default;

  int size() const { return m_; }
  bool leq(int a, int b) const {
    check_index(a);
    check_index(b);
    return up_[a].test(b);
  }
  /// Row a: the set {b : a <= b}.
  const DynBitset& above(int a) const {
    check_index(a);
    return up_[a];
  }
  /// Column a: the set {b : b <= a}.
  const DynBitset& below(int a) const {
    check_index(a);
    return down_[a];
  }

  bool operator==(const PartialPreorder& o) const {
    return m_ == o.m_ && up_ == o.up_;
  }

  static PartialPreorder antichain(int m);
  static PartialPreorder chain(int m);  // 0 < 1 < ... < m-1

 private:
  PartialPreorder(int m, std::vector<DynBitset> up);
  void check_index(int a) const {
    if (a < 0 || a >= m_) throw Error("element index out of range: " + std::to_string(a));
  }

  friend PartialPreorder validate_preorder(const std::vector<DynBitset>&);
  friend PartialPreorder reflexive_transitive_closure(std::vector<DynBitset>);

  int m_ = 0;
  std::vector<DynBitset> up_;    // up_[a].test(b) iff a <= b
  std::vector<DynBitset> down_;  // down_[a].test(b) iff b <= a
};

/// Checks the preorder axioms and wraps the matrix. Reports the first
/// reflexivity or transitivity violation (scanning indices in ascending
/// order); never repairs the input. rows[a].test(b) means a <= b.
PartialPreorder validate_preorder(const std::vector<DynBitset>& rows);

/// Explicit repair counterpart of validate_preorder: adds the diagonal and
/// closes under transitivity.
PartialPreorder reflexive_transitive_closure(std::vector<DynBitset> rows);

/// Convenience: builds an m x m matrix from (a, b) pairs meaning a <= b.
std::vector<DynBitset> relation_rows(int m, const std::vector<std::pair<int, int>>& pairs,
                                     bool with_diagonal);

bool is_partial_order(const PartialPreorder& r);
/// Every pair comparable (a <= b or b <= a).
bool is_total(const PartialPreorder& r);

/// a < b iff a <= b but not b <= a.
bool strict_less(const PartialPreorder& r, int a, int b);
/// Neither a <= b nor b <= a.
bool incomparable(const PartialPreorder& r, int a, int b);
/// a <= b <= a with a != b (a preorder tie; impossible in a partial order).
bool tied(const PartialPreorder& r, int a, int b);

/// {a in subset : no b in subset with b < a}.
DynBitset minimal_elements(const PartialPreorder& r, const DynBitset& subset);
DynBitset minimal_elements(const PartialPreorder& r);

/// Undirected graph without self-loops.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int m) : m_(m), adj_(m, DynBitset(m)) {}

  int size() const { return m_; }
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const { return adj_[u].test(v); }
  const DynBitset& neighbors(int v) const { return adj_[v]; }
  /// Pairs (u, v) with u < v, ascending.
  std::vector<std::pair<int, int>> edges() const;
  int edge_count() const;

  bool operator==(const Graph&) const = default;

 private:
  int m_ = 0;
  std::vector<DynBitset> adj_;
};

/// Edge wherever two distinct elements are comparable either way.
Graph comparability_graph(const PartialPreorder& r);

/// Connectivity of the induced subgraph on `within` by breadth-first
/// traversal. The empty vertex set counts as connected.
bool is_connected(const Graph& g, const DynBitset& within);
bool is_connected(const Graph& g);
int component_count(const Graph& g, const DynBitset& within);

/// Regularity: every minimal element strictly below every non-minimal
/// element, and the universe size is a power of 2.
bool is_regular(const PartialPreorder& r);

/// Regular, and removing the minimal elements leaves a disconnected
/// comparability graph.
bool is_regular_disconnected(const PartialPreorder& r);

/// All preorders on m elements (reflexive transitive relations), by
/// filtering every off-diagonal bit pattern through the axioms. Capped at
/// m <= 4 (the 2^(m^2-m) candidate space is only meant for desk scale).
std::vector<PartialPreorder> enumerate_preorders(int m);

}  // namespace minrev
