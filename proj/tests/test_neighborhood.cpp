#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "minrev/errors.hpp"
#include "minrev/neighborhood.hpp"
#include "minrev/structure.hpp"

using namespace minrev;

TEST_CASE("locality radius and type budget follow the game parameters") {
  CHECK(locality_radius(0) == 0);
  CHECK(locality_radius(1) == 1);
  CHECK(locality_radius(2) == 4);
  CHECK(locality_radius(3) == 13);
  CHECK(locality_radius(4) == 40);
  CHECK_THROWS_AS(locality_radius(-1), Error);
  CHECK_THROWS_AS(locality_radius(20), CapError);

  const GameParameters p11 = GameParameters::derive(1, 1);
  CHECK(p11.r == 1);
  CHECK(p11.type_budget == 16);  // 2 * 2^(1 * 3)
  CHECK(GameParameters::derive(2, 1).type_budget == 1024);
  CHECK(GameParameters::derive(1, 0).type_budget == 2);
  CHECK(GameParameters::derive(3, 3).type_budget == ~0ull);  // saturates
  CHECK_THROWS_AS(GameParameters::derive(1, -1), Error);
}

TEST_CASE("balls grow by undirected steps") {
  const RelationalStructure c6 = cycle_structure(6);
  CHECK(ball(c6, 0, 0).to_mask() == 0b000001);
  CHECK(ball(c6, 0, 1).to_mask() == 0b100011);
  CHECK(ball(c6, 0, 2).to_mask() == 0b110111);
  CHECK(ball(c6, 0, 3).to_mask() == 0b111111);
  CHECK(ball(c6, 0, 9).to_mask() == 0b111111);

  const RelationalStructure p5 = path_structure(5);
  CHECK(ball(p5, 0, 2).to_mask() == 0b00111);
  CHECK(ball(p5, 2, 1).to_mask() == 0b01110);

  CHECK_THROWS_AS(ball(c6, 6, 1), Error);
  CHECK_THROWS_AS(ball(c6, 0, -1), Error);

  // direction is ignored: a one-way edge still counts for distance
  RelationalStructure arrow;
  arrow.m = 2;
  arrow.directed = true;
  arrow.adj.assign(2, DynBitset(2));
  arrow.set_related(0, 1);
  CHECK(ball(arrow, 1, 1).to_mask() == 0b11);
}

TEST_CASE("r_neighborhood induces the ball with the root at index 0") {
  RelationalStructure c6 = cycle_structure(6);
  const int a1 = c6.add_color("A1");
  c6.colors[a1].set(3);

  const RootedStructure nb = r_neighborhood(c6, 2, 1);
  CHECK(nb.root == 0);
  CHECK(nb.s.m == 3);
  CHECK(nb.original == std::vector<int>{2, 1, 3});
  CHECK(nb.s.related(0, 1));  // 2-1
  CHECK(nb.s.related(0, 2));  // 2-3
  CHECK_FALSE(nb.s.related(1, 2));
  CHECK(nb.s.color_names == std::vector<std::string>{"A1"});
  CHECK(nb.s.colors[0].to_mask() == 0b100);  // vertex 3 sits at local index 2

  const RootedStructure end = r_neighborhood(path_structure(4), 0, 2);
  CHECK(end.s.m == 3);
  CHECK(end.original == std::vector<int>{0, 1, 2});
  CHECK(end.s.related(0, 1));
  CHECK(end.s.related(1, 2));
  CHECK_FALSE(end.s.related(0, 2));
}

TEST_CASE("canonical codes are invariant under relabeling") {
  // every vertex of a plain cycle has the same type at every radius
  const RelationalStructure c8 = cycle_structure(8);
  for (int r : {0, 1, 2, 3, 5}) {
    const TypeCode base = neighborhood_type(c8, 0, r);
    for (int v = 1; v < 8; ++v) CHECK(neighborhood_type(c8, v, r) == base);
  }

  // whole-cycle neighborhoods read as cycles, partial ones as paths
  CHECK(neighborhood_type(c8, 0, 2)[0] == 1);  // 5-vertex arc
  CHECK(neighborhood_type(c8, 0, 4)[0] == 2);  // wrapped around
  CHECK(neighborhood_type(c8, 0, 4)[1] == 8);

  // a star forces the general search and its shape tag
  RelationalStructure star = RelationalStructure::graph(4);
  for (int leaf = 1; leaf < 4; ++leaf) star.add_edge(0, leaf);
  CHECK(canonical_code(star, 0)[0] == 0);
  CHECK(canonical_code(star, 0) != canonical_code(star, 1));

  // relabeled copies canonicalize identically, roots mapped along
  std::mt19937_64 rng(11);
  RelationalStructure colored = cycle_structure(7);
  const int a1 = colored.add_color("A1");
  colored.colors[a1].set(0);
  colored.colors[a1].set(2);
  std::vector<int> perm(7);
  std::iota(perm.begin(), perm.end(), 0);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(perm.begin(), perm.end(), rng);
    const RelationalStructure moved = permuted(colored, perm);
    for (int v = 0; v < 7; ++v)
      CHECK(canonical_code(colored, v) == canonical_code(moved, perm[v]));
    CHECK(canonical_code(star, 0) == canonical_code(permuted(star, {1, 0, 2, 3}), 1));
  }

  // directed structures canonicalize through the general search too
  RelationalStructure chain;
  chain.m = 3;
  chain.directed = true;
  chain.adj.assign(3, DynBitset(3));
  chain.set_related(0, 1);
  chain.set_related(1, 2);
  const RelationalStructure moved = permuted(chain, {2, 0, 1});
  CHECK(canonical_code(chain, 0) == canonical_code(moved, 2));
  CHECK(canonical_code(chain, 0) != canonical_code(chain, 2));
}

TEST_CASE("canonicalization caps and connectivity are enforced") {
  // 13 vertices with a hub: too big for the general search
  RelationalStructure big_star = RelationalStructure::graph(13);
  for (int leaf = 1; leaf < 13; ++leaf) big_star.add_edge(0, leaf);
  CHECK_THROWS_AS(canonical_code(big_star, 0), CapError);

  // arcs dodge the cap: a 300-cycle canonicalizes whole and per ball
  const RelationalStructure c300 = cycle_structure(300);
  CHECK(canonical_code(c300, 17)[1] == 300);
  const TypeCode t = neighborhood_type(c300, 0, 5);
  CHECK(t[0] == 1);
  CHECK(t[1] == 11);
  CHECK(neighborhood_type(c300, 123, 5) == t);

  CHECK_THROWS_AS(canonical_code(disjoint_union(cycle_structure(3), cycle_structure(3)), 0),
                  Error);
  CHECK_THROWS_AS(canonical_code(cycle_structure(3), 5), Error);
}

TEST_CASE("colored cycles stay within the type budget") {
  // 1 extension color, radius 1: the budget bounds distinct codes
  const GameParameters p = GameParameters::derive(1, 1);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    RelationalStructure c = cycle_structure(16);
    const int a1 = c.add_color("A1");
    for (int v = 0; v < 16; ++v)
      if (rng() & 1) c.colors[a1].set(v);
    std::set<TypeCode> distinct;
    for (int v = 0; v < 16; ++v) distinct.insert(neighborhood_type(c, v, p.r));
    CHECK(distinct.size() <= p.type_budget);
  }
}

TEST_CASE("hanf_check pairs vertices by neighborhood type") {
  const RelationalStructure c6 = cycle_structure(6);
  const RelationalStructure moved = permuted(c6, {3, 1, 5, 0, 2, 4});
  const auto f = hanf_check(c6, moved, 1);
  REQUIRE(f.has_value());
  // a permutation that preserves types pointwise
  std::vector<int> seen(6, 0);
  for (int v = 0; v < 6; ++v) {
    CHECK(neighborhood_type(c6, v, 1) == neighborhood_type(moved, (*f)[v], 1));
    ++seen[(*f)[v]];
  }
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));

  // a cycle and a path disagree already at the endpoints
  CHECK_FALSE(hanf_check(c6, path_structure(6), 1).has_value());
  // radius 0 sees only colors, so they pair up fine
  CHECK(hanf_check(c6, path_structure(6), 0).has_value());

  // one 6-cycle against two triangles: r = 1 distinguishes, r = 0 does not
  const RelationalStructure two_c3 = disjoint_union(cycle_structure(3), cycle_structure(3));
  CHECK_FALSE(hanf_check(c6, two_c3, 1).has_value());
  CHECK(hanf_check(c6, two_c3, 0).has_value());

  CHECK_THROWS_AS(hanf_check(c6, cycle_structure(5), 1), ValidationError);
  RelationalStructure tinted = c6;
  tinted.add_color("A1");
  CHECK_THROWS_AS(hanf_check(c6, tinted, 1), ValidationError);
}
