#include "minrev/order.hpp"

namespace minrev {

PartialPreorder::PartialPreorder(int m, std::vector<DynBitset> up)
    : m_(m), up_(std::move(up)), down_(m, DynBitset(m)) {
  for (int a = 0; a < m_; ++a)
    for (int b : up_[a].elements()) down_[b].set(a);
}

PartialPreorder PartialPreorder::antichain(int m) {
  std::vector<DynBitset> rows(m, DynBitset(m));
  for (int a = 0; a < m; ++a) rows[a].set(a);
  return PartialPreorder(m, std::move(rows));
}

PartialPreorder PartialPreorder::chain(int m) {
  std::vector<DynBitset> rows(m, DynBitset(m));
  for (int a = 0; a < m; ++a)
    for (int b = a; b < m; ++b) rows[a].set(b);
  return PartialPreorder(m, std::move(rows));
}

PartialPreorder validate_preorder(const std::vector<DynBitset>& rows) {
  const int m = int(rows.size());
  for (const auto& row : rows)
    if (row.size() != m) throw ValidationError("relation matrix is not square");
  for (int a = 0; a < m; ++a)
    if (!rows[a].test(a))
      throw ValidationError("not reflexive: missing (" + std::to_string(a) + ", " +
                            std::to_string(a) + ")");
  for (int a = 0; a < m; ++a)
    for (int b : rows[a].elements())
      if (!rows[b].is_subset_of(rows[a])) {
        for (int c : rows[b].elements())
          if (!rows[a].test(c))
            throw ValidationError("not transitive: " + std::to_string(a) + " <= " +
                                  std::to_string(b) + " and " + std::to_string(b) + " <= " +
                                  std::to_string(c) + " but not " + std::to_string(a) +
                                  " <= " + std::to_string(c));
      }
  return PartialPreorder(m, rows);
}

PartialPreorder reflexive_transitive_closure(std::vector<DynBitset> rows) {
  const int m = int(rows.size());
  for (const auto& row : rows)
    if (row.size() != m) throw ValidationError("relation matrix is not square");
  for (int a = 0; a < m; ++a) rows[a].set(a);
  // Warshall over bitset rows.
  for (int b = 0; b < m; ++b)
    for (int a = 0; a < m; ++a)
      if (rows[a].test(b)) rows[a] |= rows[b];
  return PartialPreorder(m, std::move(rows));
}

std::vector<DynBitset> relation_rows(int m, const std::vector<std::pair<int, int>>& pairs,
                                     bool with_diagonal) {
  std::vector<DynBitset> rows(m, DynBitset(m));
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= m || b < 0 || b >= m)
      throw ValidationError("relation pair out of range: (" + std::to_string(a) + ", " +
                            std::to_string(b) + ")");
    rows[a].set(b);
  }
  if (with_diagonal)
    for (int a = 0; a < m; ++a) rows[a].set(a);
  return rows;
}

bool is_partial_order(const PartialPreorder& r) {
  for (int a = 0; a < r.size(); ++a)
    for (int b : r.above(a).elements())
      if (b != a && r.leq(b, a)) return false;
  return true;
}

bool is_total(const PartialPreorder& r) {
  for (int a = 0; a < r.size(); ++a)
    for (int b = a + 1; b < r.size(); ++b)
      if (!r.leq(a, b) && !r.leq(b, a)) return false;
  return true;
}

bool strict_less(const PartialPreorder& r, int a, int b) {
  return r.leq(a, b) && !r.leq(b, a);
}

bool incomparable(const PartialPreorder& r, int a, int b) {
  return !r.leq(a, b) && !r.leq(b, a);
}

bool tied(const PartialPreorder& r, int a, int b) {
  return a != b && r.leq(a, b) && r.leq(b, a);
}

DynBitset minimal_elements(const PartialPreorder& r, const DynBitset& subset) {
  if (subset.size() != r.size()) throw Error("subset size does not match preorder");
  DynBitset out(r.size());
  for (int a : subset.elements()) {
    DynBitset strictly_below = r.below(a);
    strictly_below.and_not(r.above(a));
    if (!strictly_below.intersects(subset)) out.set(a);
  }
  return out;
}

DynBitset minimal_elements(const PartialPreorder& r) {
  return minimal_elements(r, DynBitset(r.size(), true));
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || u >= m_ || v < 0 || v >= m_)
    throw Error("vertex index out of range: (" + std::to_string(u) + ", " + std::to_string(v) +
                ")");
  if (u == v) throw ValidationError("self-loop rejected: " + std::to_string(u));
  adj_[u].set(v);
  adj_[v].set(u);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < m_; ++u)
    for (int v = adj_[u].find_next(u); v >= 0; v = adj_[u].find_next(v))
      out.emplace_back(u, v);
  return out;
}

int Graph::edge_count() const {
  int twice = 0;
  for (int u = 0; u < m_; ++u) twice += adj_[u].count();
  return twice / 2;
}

Graph comparability_graph(const PartialPreorder& r) {
  Graph g(r.size());
  for (int a = 0; a < r.size(); ++a)
    for (int b : r.above(a).elements())
      if (a != b && !g.has_edge(a, b)) g.add_edge(a, b);
  return g;
}

int component_count(const Graph& g, const DynBitset& within) {
  if (within.size() != g.size()) throw Error("vertex subset size does not match graph");
  DynBitset unseen = within;
  int components = 0;
  while (true) {
    int start = unseen.find_first();
    if (start < 0) break;
    ++components;
    DynBitset frontier(g.size());
    frontier.set(start);
    while (frontier.any()) {
      unseen.and_not(frontier);
      DynBitset next(g.size());
      for (int v : frontier.elements()) next |= g.neighbors(v);
      next &= unseen;
      frontier = std::move(next);
    }
  }
  return components;
}

bool is_connected(const Graph& g, const DynBitset& within) {
  return component_count(g, within) <= 1;
}

bool is_connected(const Graph& g) { return is_connected(g, DynBitset(g.size(), true)); }

bool is_regular(const PartialPreorder& r) {
  const int m = r.size();
  if (m <= 0 || (m & (m - 1)) != 0) return false;
  DynBitset mins = minimal_elements(r);
  for (int a : mins.elements())
    for (int b = 0; b < m; ++b)
      if (!mins.test(b) && !strict_less(r, a, b)) return false;
  return true;
}

bool is_regular_disconnected(const PartialPreorder& r) {
  if (!is_regular(r)) return false;
  DynBitset non_minimal = minimal_elements(r).complement();
  return !is_connected(comparability_graph(r), non_minimal);
}

std::vector<PartialPreorder> enumerate_preorders(int m) {
  if (m < 0 || m > 4)
    throw CapError("preorder enumeration is capped at 4 elements (got " + std::to_string(m) +
                   ")");
  std::vector<std::pair<int, int>> cells;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (a != b) cells.emplace_back(a, b);

  std::vector<PartialPreorder> out;
  const std::uint32_t limit = 1u << cells.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::uint8_t rows[4] = {0, 0, 0, 0};
    for (int a = 0; a < m; ++a) rows[a] = std::uint8_t(1u << a);
    for (std::size_t i = 0; i < cells.size(); ++i)
      if ((mask >> i) & 1u) rows[cells[i].first] |= std::uint8_t(1u << cells[i].second);
    bool transitive = true;
    for (int a = 0; a < m && transitive; ++a) {
      std::uint8_t reach = 0;
      for (int b = 0; b < m; ++b)
        if ((rows[a] >> b) & 1u) reach |= rows[b];
      transitive = (reach & ~rows[a]) == 0;
    }
    if (!transitive) continue;
    std::vector<DynBitset> bits(m, DynBitset(m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        if ((rows[a] >> b) & 1u) bits[a].set(b);
    out.push_back(validate_preorder(bits));
  }
  return out;
}

}  // namespace minrev
