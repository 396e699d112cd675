#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "minrev/ef.hpp"
#include "minrev/errors.hpp"
#include "minrev/order.hpp"
#include "minrev/structure.hpp"

using namespace minrev;

namespace {

// reference meaning of a position: the picked pairs form a partial
// isomorphism (colors, self-loops, and both relation directions agree)
bool partial_iso(const RelationalStructure& s1, const RelationalStructure& s2,
                 const std::vector<std::pair<int, int>>& pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    for (std::size_t c = 0; c < s1.colors.size(); ++c)
      if (s1.colors[c].test(a) != s2.colors[c].test(b)) return false;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      const auto [x, y] = pairs[j];
      if ((a == x) != (b == y)) return false;
      if (s1.related(a, x) != s2.related(b, y)) return false;
      if (s1.related(x, a) != s2.related(y, b)) return false;
    }
  }
  return true;
}

// a Spoiler trace is valid when every recorded reply keeps the position a
// partial isomorphism and the final pick has no legal reply at all
void check_trace(const RelationalStructure& s1, const RelationalStructure& s2,
                 const EFResult& res) {
  REQUIRE(res.winner == Winner::Spoiler);
  REQUIRE_FALSE(res.trace.empty());
  REQUIRE(static_cast<int>(res.trace.size()) <= res.rounds);
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < res.trace.size(); ++i) {
    const EFMove& mv = res.trace[i];
    CHECK(mv.round == static_cast<int>(i) + 1);
    CHECK((mv.side == 0 || mv.side == 1));
    const bool last = i + 1 == res.trace.size();
    if (mv.left >= 0 && mv.right >= 0) {
      pairs.emplace_back(mv.left, mv.right);
      CHECK(partial_iso(s1, s2, pairs));
    } else {
      // unanswered pick: only allowed as the closing move
      CHECK(last);
      const int u = mv.side == 0 ? mv.left : mv.right;
      REQUIRE(u >= 0);
      const int other_size = mv.side == 0 ? s2.m : s1.m;
      for (int v = 0; v < other_size; ++v) {
        auto attempt = pairs;
        if (mv.side == 0)
          attempt.emplace_back(u, v);
        else
          attempt.emplace_back(v, u);
        CHECK_FALSE(partial_iso(s1, s2, attempt));
      }
    }
  }
  const EFMove& closing = res.trace.back();
  CHECK((closing.left == -1 || closing.right == -1));
}

RelationalStructure random_graph(std::mt19937_64& rng, int m) {
  RelationalStructure g = RelationalStructure::graph(m);
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v)
      if (rng() % 3 == 0) g.add_edge(u, v);
  return g;
}

}  // namespace

TEST_CASE("zero rounds always go to the duplicator") {
  const EFResult r = ef_game(cycle_structure(3), path_structure(7), 0);
  CHECK(r.winner == Winner::Duplicator);
  CHECK(r.rounds == 0);
  CHECK(r.trace.empty());
}

TEST_CASE("the solver enforces its exactness caps") {
  const RelationalStructure c6 = cycle_structure(6);
  CHECK_THROWS_AS(ef_game(c6, c6, -1), Error);
  try {
    ef_game(c6, c6, 4);
    CHECK(false);
  } catch (const CapError& e) {
    CHECK(std::string(e.what()) == "exact game solver is capped at q = 3");
  }
  CHECK_THROWS_AS(ef_game(cycle_structure(65), cycle_structure(65), 3), CapError);
  CHECK_THROWS_AS(ef_game(cycle_structure(301), cycle_structure(301), 2), CapError);
  CHECK_THROWS_AS(q_equivalent(cycle_structure(301), cycle_structure(3), 1), CapError);

  RelationalStructure tinted = c6;
  tinted.add_color("A1");
  CHECK_THROWS_AS(ef_game(c6, tinted, 1), ValidationError);
  CHECK_THROWS_AS(ef_game(c6, RelationalStructure::from_order(PartialPreorder::chain(6)), 1),
                  ValidationError);  // directed against symmetric
}

TEST_CASE("a two chain and a three chain split at two rounds") {
  const RelationalStructure c2 = RelationalStructure::from_order(PartialPreorder::chain(2));
  const RelationalStructure c3 = RelationalStructure::from_order(PartialPreorder::chain(3));
  CHECK(q_equivalent(c2, c3, 1));
  CHECK_FALSE(q_equivalent(c2, c3, 2));
  const EFResult res = ef_game(c2, c3, 2);
  CHECK(res.winner == Winner::Spoiler);
  check_trace(c2, c3, res);
}

TEST_CASE("one six cycle versus two triangles needs three rounds") {
  const RelationalStructure c6 = cycle_structure(6);
  const RelationalStructure twin = disjoint_union(cycle_structure(3), cycle_structure(3));
  CHECK(q_equivalent(c6, twin, 2));
  CHECK_FALSE(q_equivalent(c6, twin, 3));
  const EFResult res = ef_game(c6, twin, 3);
  check_trace(c6, twin, res);
  // trace extraction is optional
  CHECK(ef_game(c6, twin, 3, false).trace.empty());
}

TEST_CASE("isomorphic structures never lose") {
  std::mt19937_64 rng(17);
  RelationalStructure colored = cycle_structure(8);
  const int a1 = colored.add_color("A1");
  colored.colors[a1].set(2);
  colored.colors[a1].set(5);
  std::vector<int> perm = {4, 7, 1, 0, 3, 6, 2, 5};
  const RelationalStructure moved = permuted(colored, perm);
  for (int q = 0; q <= 3; ++q) CHECK(q_equivalent(colored, moved, q));

  for (int trial = 0; trial < 5; ++trial) {
    const RelationalStructure g = random_graph(rng, 6);
    std::vector<int> p(6);
    for (int i = 0; i < 6; ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    CHECK(q_equivalent(g, permuted(g, p), 3));
  }
}

TEST_CASE("game value is symmetric and monotone on a seeded corpus") {
  std::mt19937_64 rng(99);
  int spoiler_seen = 0;
  for (int pair = 0; pair < 50; ++pair) {
    const int m1 = 2 + static_cast<int>(rng() % 6);
    const int m2 = 2 + static_cast<int>(rng() % 6);
    const RelationalStructure a = random_graph(rng, m1);
    const RelationalStructure b = random_graph(rng, m2);
    bool was_equivalent = true;
    for (int q = 0; q <= 3; ++q) {
      const bool fwd = q_equivalent(a, b, q);
      CHECK(fwd == q_equivalent(b, a, q));
      // once the spoiler wins, more rounds never help the duplicator
      if (!was_equivalent) CHECK_FALSE(fwd);
      was_equivalent = fwd;
      if (!fwd) ++spoiler_seen;
    }
    const EFResult res = ef_game(a, b, 3);
    CHECK((res.winner == Winner::Duplicator) == q_equivalent(a, b, 3));
    if (res.winner == Winner::Spoiler) check_trace(a, b, res);
  }
  // the corpus must exercise both outcomes to mean anything
  CHECK(spoiler_seen > 0);
}
