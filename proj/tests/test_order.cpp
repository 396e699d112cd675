#include <algorithm>

#include "doctest.h"
#include "minrev/order.hpp"

using namespace minrev;

namespace {

PartialPreorder from_pairs(int m, const std::vector<std::pair<int, int>>& pairs) {
  return validate_preorder(relation_rows(m, pairs, true));
}

}  // namespace

TEST_CASE("chain and antichain factories") {
  PartialPreorder c = PartialPreorder::chain(3);
  CHECK(c.leq(0, 2));
  CHECK(!c.leq(2, 0));
  CHECK(c.leq(1, 1));
  PartialPreorder a = PartialPreorder::antichain(3);
  CHECK(a.leq(1, 1));
  CHECK(!a.leq(0, 1));
  CHECK(minimal_elements(a).count() == 3);
  CHECK(minimal_elements(c).elements() == std::vector<int>{0});
}

TEST_CASE("validation rejects broken axioms and names the first violation") {
  std::vector<DynBitset> rows(3, DynBitset(3));
  rows[0].set(0);
  rows[1].set(1);  // missing diagonal at 2
  rows[2].set(2);
  rows[0].set(1);
  rows[1].set(2);  // 0<=1, 1<=2 but no 0<=2
  CHECK_THROWS_AS(validate_preorder(rows), ValidationError);
  rows[0].set(2);
  CHECK_NOTHROW(validate_preorder(rows));
  rows[1].reset(1);
  CHECK_THROWS_AS(validate_preorder(rows), ValidationError);
}

TEST_CASE("closure repairs what validation rejects") {
  std::vector<DynBitset> rows(3, DynBitset(3));
  rows[0].set(1);
  rows[1].set(2);
  PartialPreorder r = reflexive_transitive_closure(rows);
  CHECK(r.leq(0, 2));
  CHECK(r.leq(2, 2));
  CHECK(!r.leq(2, 0));
}

TEST_CASE("strictness, incomparability and ties") {
  PartialPreorder c = PartialPreorder::chain(2);
  CHECK(strict_less(c, 0, 1));
  CHECK(!strict_less(c, 1, 0));
  CHECK(!strict_less(c, 0, 0));
  PartialPreorder a = PartialPreorder::antichain(2);
  CHECK(incomparable(a, 0, 1));
  CHECK(!tied(a, 0, 1));
  // a genuine preorder tie
  PartialPreorder t = from_pairs(2, {{0, 1}, {1, 0}});
  CHECK(tied(t, 0, 1));
  CHECK(!incomparable(t, 0, 1));
  CHECK(!strict_less(t, 0, 1));
  CHECK(!is_partial_order(t));
  CHECK(is_partial_order(c));
}

TEST_CASE("minimal elements within a subset") {
  PartialPreorder c = PartialPreorder::chain(4);
  DynBitset sub(4);
  sub.set(1);
  sub.set(3);
  CHECK(minimal_elements(c, sub).elements() == std::vector<int>{1});
  CHECK(minimal_elements(c, DynBitset(4)).none());
}

TEST_CASE("above and below are transposed views") {
  PartialPreorder r = from_pairs(3, {{0, 1}, {0, 2}});
  CHECK(r.above(0).elements() == std::vector<int>{0, 1, 2});
  CHECK(r.below(2).elements() == std::vector<int>{0, 2});
}

TEST_CASE("comparability graph and connectivity") {
  PartialPreorder r = from_pairs(4, {{0, 1}, {2, 3}});
  Graph g = comparability_graph(r);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK(!g.has_edge(0, 2));
  CHECK(g.edge_count() == 2);
  CHECK(!is_connected(g));
  DynBitset within(4);
  within.set(0);
  within.set(1);
  CHECK(is_connected(g, within));
  CHECK(component_count(g, DynBitset(4, true)) == 2);
}

TEST_CASE("regularity needs power-of-two size and minimals below everything") {
  CHECK(is_regular(PartialPreorder::chain(4)));
  CHECK(is_regular(PartialPreorder::antichain(4)));   // no non-minimal elements
  CHECK(!is_regular(PartialPreorder::chain(3)));      // size not a power of two
  // two disjoint 2-chains: minimal 0 is not below non-minimal 3
  CHECK(!is_regular(from_pairs(4, {{0, 1}, {2, 3}})));
  // diamond: 0 below both tops
  CHECK(is_regular(from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}})));
}

TEST_CASE("regular-disconnected requires splitting above the minimals") {
  // bottom 0 under the chain 3 < 1 and the isolated non-minimal 2:
  // removing 0 leaves two comparability components
  PartialPreorder v = from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {3, 1}});
  CHECK(is_regular(v));
  CHECK(is_regular_disconnected(v));
  CHECK(!is_regular_disconnected(PartialPreorder::chain(4)));
}

TEST_CASE("preorder enumeration matches the literature counts") {
  // labeled preorders = labeled finite topologies: 1, 4, 29, 355 for m = 1..4
  CHECK(enumerate_preorders(1).size() == 1);
  CHECK(enumerate_preorders(2).size() == 4);
  CHECK(enumerate_preorders(3).size() == 29);
  auto all4 = enumerate_preorders(4);
  CHECK(all4.size() == 355);
  // labeled partial orders: 219 at m = 4
  int posets = 0, regular = 0;
  for (const auto& r : all4) {
    if (is_partial_order(r)) ++posets;
    if (is_regular(r)) ++regular;
  }
  CHECK(posets == 219);
  CHECK(regular > 0);
  CHECK(enumerate_preorders(0).size() == 1);
  CHECK_THROWS_AS(enumerate_preorders(5), CapError);
}

TEST_CASE("element index range checks") {
  PartialPreorder c = PartialPreorder::chain(2);
  CHECK_THROWS_AS(c.leq(0, 2), Error);
  CHECK_THROWS_AS((void)c.above(-1), Error);
}
