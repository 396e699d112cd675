#include "minrev/swap.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "minrev/ef.hpp"
#include "minrev/errors.hpp"

namespace minrev {

std::vector<int> cycle_order(const RelationalStructure& g) {
  if (g.directed) throw ValidationError("cycle orientation needs a symmetric structure");
  if (g.m < 3) throw ValidationError("a cycle needs at least 3 vertices");
  for (int v = 0; v < g.m; ++v)
    if (g.adj[static_cast<std::size_t>(v)].count() != 2)
      throw ValidationError("vertex " + std::to_string(v) + " does not have degree 2");

  std::vector<int> order{0};
  order.reserve(static_cast<std::size_t>(g.m));
  int prev = 0;
  int cur = g.adj[0].elements().back();  // higher-indexed neighbor fixes direction
  while (cur != 0) {
    order.push_back(cur);
    for (int nb : g.adj[static_cast<std::size_t>(cur)].elements()) {
      if (nb != prev) {
        prev = cur;
        cur = nb;
        break;
      }
    }
  }
  if (static_cast<int>(order.size()) != g.m)
    throw ValidationError("structure is not a single cycle");
  return order;
}

SwapResult swap_construction(const RelationalStructure& c1prime, int q, int ell) {
  if (q < 1) throw Error("swap surgery needs q >= 1");
  const int l1 = c1prime.color_index("L1");
  const int l2 = c1prime.color_index("L2");
  if (l1 < 0 || l2 < 0) throw ValidationError("cycle colors L1 and L2 must be present");
  int extras = 0;
  for (const std::string& name : c1prime.color_names)
    if (name != "L1" && name != "L2" && name != "L3") ++extras;
  if (extras != ell)
    throw ValidationError("declared extension color count does not match the structure");

  std::vector<int> order = cycle_order(c1prime);
  const int length = static_cast<int>(order.size());
  for (int i = 0; i < length; ++i) {
    const int u = order[static_cast<std::size_t>(i)];
    const int v = order[static_cast<std::size_t>((i + 1) % length)];
    const bool alternates = (c1prime.in_color(l1, u) && c1prime.in_color(l2, v)) ||
                            (c1prime.in_color(l2, u) && c1prime.in_color(l1, v));
    if (!alternates) throw ValidationError("cycle colors must alternate between L1 and L2");
  }

  SwapResult out;
  out.params = GameParameters::derive(q, ell);
  const int r = out.params.r;

  std::vector<TypeCode> types(static_cast<std::size_t>(c1prime.m));
  for (int v = 0; v < c1prime.m; ++v)
    types[static_cast<std::size_t>(v)] = neighborhood_type(c1prime, v, r);

  std::vector<int> position(static_cast<std::size_t>(c1prime.m));
  for (int i = 0; i < length; ++i) position[static_cast<std::size_t>(order[i])] = i;
  auto cycle_distance = [&](int u, int v) {
    int d = std::abs(position[static_cast<std::size_t>(u)] - position[static_cast<std::size_t>(v)]);
    return std::min(d, length - d);
  };

  int a = -1, b = -1;
  for (int u = 0; u < c1prime.m && a < 0; ++u)
    for (int v = u + 1; v < c1prime.m; ++v) {
      if (cycle_distance(u, v) < 2 * r + 2) continue;
      if (types[static_cast<std::size_t>(u)] != types[static_cast<std::size_t>(v)]) continue;
      a = u;
      b = v;
      break;
    }
  if (a < 0)
    throw Error("no vertex pair with matching neighborhoods at the required distance");

  auto successor = [&](int v) {
    return order[static_cast<std::size_t>((position[static_cast<std::size_t>(v)] + 1) % length)];
  };
  out.a = a;
  out.b = b;
  out.a_succ = successor(a);
  out.b_succ = successor(b);

  out.result = c1prime;
  out.result.remove_edge(out.a, out.a_succ);
  out.result.remove_edge(out.b, out.b_succ);
  out.result.add_edge(out.a, out.b_succ);
  out.result.add_edge(out.b, out.a_succ);
  return out;
}

SplitReport verify_crown_split(const CrownOrder& m1, int q,
                               const std::vector<DynBitset>& extension) {
  if (m1.spec.is_double()) throw Error("the split pipeline starts from a single crown");
  if (m1.spec.bottoms < 1) throw Error("the crown must carry at least one bottom");
  const int total = m1.order.size();
  for (const DynBitset& a : extension)
    if (static_cast<int>(a.size()) != total)
      throw Error("extension subsets must match the order size");
  const int ell = static_cast<int>(extension.size());

  SplitReport report;
  report.g1_ext = to_colored_graph(m1);
  for (int j = 0; j < ell; ++j) {
    const int c = report.g1_ext.add_color("A" + std::to_string(j + 1));
    report.g1_ext.colors[static_cast<std::size_t>(c)] = extension[static_cast<std::size_t>(j)];
  }

  // Cycle part: the crown occupies the first 2s indices, bottoms come last.
  const int cycle_len = m1.spec.crown_size();
  RelationalStructure cycle = RelationalStructure::graph(cycle_len);
  for (int u = 0; u < cycle_len; ++u)
    for (int v : report.g1_ext.adj[static_cast<std::size_t>(u)].elements())
      if (v > u && v < cycle_len) cycle.add_edge(u, v);
  for (std::size_t c = 0; c < report.g1_ext.colors.size(); ++c) {
    if (report.g1_ext.color_names[c] == "L3") continue;
    const int idx = cycle.add_color(report.g1_ext.color_names[c]);
    for (int v = 0; v < cycle_len; ++v)
      if (report.g1_ext.colors[c].test(v)) cycle.colors[static_cast<std::size_t>(idx)].set(v);
  }

  report.swap = swap_construction(cycle, q, ell);

  report.g2_ext = report.g1_ext;
  report.g2_ext.remove_edge(report.swap.a, report.swap.a_succ);
  report.g2_ext.remove_edge(report.swap.b, report.swap.b_succ);
  report.g2_ext.add_edge(report.swap.a, report.swap.b_succ);
  report.g2_ext.add_edge(report.swap.b, report.swap.a_succ);

  report.m2_order = from_colored_graph(report.g2_ext);
  report.sizes_match = report.m2_order.size() == total;
  report.double_crown = is_extended_double_crown(report.m2_order);
  report.regular_preserved =
      !is_regular(m1.order) || is_regular_disconnected(report.m2_order);
  report.q_equivalent_holds = q_equivalent(report.g1_ext, report.g2_ext, q);
  report.verdict = report.sizes_match && report.double_crown && report.regular_preserved &&
                   report.q_equivalent_holds;
  return report;
}

}  // namespace minrev
