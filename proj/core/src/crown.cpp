#include "minrev/crown.hpp"

#include <utility>
#include <vector>

#include "minrev/errors.hpp"

namespace minrev {

namespace {

void append_crown_pairs(std::vector<std::pair<int, int>>& pairs, int offset, int s) {
  const int tops = offset;
  const int mids = offset + s;
  for (int i = 0; i < s; ++i) {
    pairs.push_back({mids + i, tops + i});
    pairs.push_back({mids + (i + 1) % s, tops + i});
  }
}

CrownOrder assemble(const CrownSpec& spec) {
  std::vector<std::pair<int, int>> pairs;
  append_crown_pairs(pairs, 0, spec.s1);
  if (spec.s2 > 0) append_crown_pairs(pairs, 2 * spec.s1, spec.s2);
  const int crown = spec.crown_size();
  for (int b = 0; b < spec.bottoms; ++b)
    for (int v = 0; v < crown; ++v) pairs.push_back({crown + b, v});
  return {reflexive_transitive_closure(relation_rows(spec.size(), pairs, false)), spec};
}

}  // namespace

CrownOrder build_crown(int s) {
  if (s < 2) throw Error("crown width must be at least 2");
  return assemble({s, 0, 0});
}

CrownOrder build_double_crown(int s1, int s2) {
  if (s1 < 2 || s2 < 2) throw Error("crown widths must be at least 2");
  return assemble({s1, s2, 0});
}

CrownOrder extend_with_bottom(const CrownOrder& m, int k) {
  if (k < 1) throw Error("at least one bottom must be added");
  CrownSpec spec = m.spec;
  spec.bottoms += k;
  return assemble(spec);
}

RelationalStructure to_colored_graph(const CrownOrder& m) {
  RelationalStructure g = RelationalStructure::graph(m.order.size());
  Graph comp = comparability_graph(m.order);
  for (auto [u, v] : comp.edges()) g.add_edge(u, v);
  const int l1 = g.add_color("L1");
  const int l2 = g.add_color("L2");
  const int l3 = g.add_color("L3");
  auto paint = [&](int color, int from, int count) {
    for (int v = from; v < from + count; ++v) g.colors[static_cast<std::size_t>(color)].set(v);
  };
  paint(l1, 0, m.spec.s1);
  paint(l2, m.spec.s1, m.spec.s1);
  if (m.spec.is_double()) {
    paint(l1, 2 * m.spec.s1, m.spec.s2);
    paint(l2, 2 * m.spec.s1 + m.spec.s2, m.spec.s2);
  }
  paint(l3, m.spec.crown_size(), m.spec.bottoms);
  return g;
}

PartialPreorder from_colored_graph(const RelationalStructure& g) {
  if (g.directed) throw ValidationError("layer decoding expects a symmetric graph");
  const int l1 = g.color_index("L1");
  const int l2 = g.color_index("L2");
  const int l3 = g.color_index("L3");
  if (l1 < 0 || l2 < 0 || l3 < 0)
    throw ValidationError("layer colors L1, L2, L3 must all be present");

  auto layer_of = [&](int v) {
    const int in1 = g.in_color(l1, v) ? 1 : 0;
    const int in2 = g.in_color(l2, v) ? 1 : 0;
    const int in3 = g.in_color(l3, v) ? 1 : 0;
    if (in1 + in2 + in3 != 1)
      throw ValidationError("vertex " + std::to_string(v) +
                            " must lie in exactly one of L1, L2, L3");
    return in1 ? 1 : (in2 ? 2 : 3);
  };

  std::vector<int> layer(static_cast<std::size_t>(g.m));
  for (int v = 0; v < g.m; ++v) layer[static_cast<std::size_t>(v)] = layer_of(v);

  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < g.m; ++u) {
    for (int v : g.adj[static_cast<std::size_t>(u)].elements()) {
      if (v <= u) continue;
      const int lu = layer[static_cast<std::size_t>(u)];
      const int lv = layer[static_cast<std::size_t>(v)];
      if (lu == lv)
        throw ValidationError("edge between two L" + std::to_string(lu) +
                              " vertices has no order reading");
      // higher layer number = lower in the order
      if (lu > lv)
        pairs.push_back({u, v});
      else
        pairs.push_back({v, u});
    }
  }
  PartialPreorder r = reflexive_transitive_closure(relation_rows(g.m, pairs, false));
  if (!is_partial_order(r)) throw ValidationError("decoded relation is not a partial order");
  return r;
}

namespace {

/// Shared shape check: at least one bottom strictly below everything else,
/// and the rest splits into tops and mids where every top covers exactly two
/// mids and every mid supports exactly two tops, forming `want` alternating
/// comparability cycles. In a partial order distinct minimal elements are
/// automatically incomparable, and nothing but a mid can sit strictly below
/// a top inside the upper part, so the explicit checks below suffice.
bool crown_layers(const PartialPreorder& r, int want) {
  const int m = r.size();
  if (m < 1 || !is_partial_order(r)) return false;

  DynBitset bottoms = minimal_elements(r);
  if (bottoms.none() || static_cast<int>(bottoms.count()) == m) return false;
  DynBitset upper = bottoms;
  upper = upper.complement();
  for (int b : bottoms.elements())
    for (int v : upper.elements())
      if (!strict_less(r, b, v)) return false;

  DynBitset mids = minimal_elements(r, upper);
  DynBitset tops = upper;
  tops.and_not(mids);
  if (mids.count() != tops.count() || static_cast<int>(mids.count()) < 2) return false;

  for (int t : tops.elements()) {
    if (r.above(t).count() != 1) return false;  // maximal overall
    DynBitset covered = r.below(t);
    covered &= upper;
    covered.reset(t);
    if (covered.count() != 2) return false;
  }
  for (int b : mids.elements()) {
    DynBitset over = r.above(b);
    over &= upper;
    over.reset(b);
    if (over.count() != 2) return false;
  }

  return component_count(comparability_graph(r), upper) == want;
}

}  // namespace

bool is_extended_crown(const PartialPreorder& r) { return crown_layers(r, 1); }

bool is_extended_double_crown(const PartialPreorder& r) { return crown_layers(r, 2); }

FamilyOracle family_oracle(const std::string& name) {
  if (name == "regular") return [](const PartialPreorder& r) { return is_regular(r); };
  if (name == "regular-disconnected")
    return [](const PartialPreorder& r) { return is_regular_disconnected(r); };
  if (name == "extended-crown")
    return [](const PartialPreorder& r) { return is_extended_crown(r); };
  if (name == "extended-double-crown")
    return [](const PartialPreorder& r) { return is_extended_double_crown(r); };
  throw Error("unknown family: " + name);
}

}  // namespace minrev
