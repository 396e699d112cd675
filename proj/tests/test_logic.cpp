#include <random>

#include "doctest.h"
#include "minrev/logic.hpp"

using namespace minrev;

TEST_CASE("assignment encoding puts x1 in the least significant bit") {
  Assignment a{3, 0b011};
  CHECK(a.value(1));
  CHECK(a.value(2));
  CHECK(!a.value(3));
  CHECK(a.to_string() == "011");
}

TEST_CASE("parser handles precedence and associativity") {
  // & binds tighter than |
  CHECK(models(parse_formula("x1 | x2 & x3", 3), 3) ==
        models(parse_formula("x1 | (x2 & x3)", 3), 3));
  // ! binds tightest
  CHECK(models(parse_formula("!x1 & x2", 2), 2) ==
        models(parse_formula("(!x1) & x2", 2), 2));
  // -> associates right
  CHECK(models(parse_formula("x1 -> x2 -> x3", 3), 3) ==
        models(parse_formula("x1 -> (x2 -> x3)", 3), 3));
  // <-> associates left
  CHECK(models(parse_formula("x1 <-> x2 <-> x3", 3), 3) ==
        models(parse_formula("(x1 <-> x2) <-> x3", 3), 3));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_formula("x1 &", 2), ParseError);
  CHECK_THROWS_AS(parse_formula("x3", 2), ParseError);  // variable out of range
  CHECK_THROWS_AS(parse_formula("", 2), ParseError);
  CHECK_THROWS_AS(parse_formula("x1 x2", 2), ParseError);
  try {
    parse_formula("x1 & %", 2);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("models by direct truth table") {
  CHECK(models(parse_formula("x1 & !x2", 2), 2) == ModelSet::of(2, {1}));
  CHECK(models(parse_formula("true", 2), 2) == ModelSet::all(2));
  CHECK(models(parse_formula("false", 2), 2) == ModelSet::none(2));
  CHECK(models(parse_formula("x1 <-> x2", 2), 2) == ModelSet::of(2, {0, 3}));
  CHECK(models(parse_formula("x1 -> x2", 2), 2) == ModelSet::of(2, {0, 2, 3}));
}

TEST_CASE("model set operations") {
  ModelSet a = ModelSet::of(2, {0, 1});
  ModelSet b = ModelSet::of(2, {1, 3});
  CHECK((a & b) == ModelSet::of(2, {1}));
  CHECK((a | b) == ModelSet::of(2, {0, 1, 3}));
  CHECK(a.complement() == ModelSet::of(2, {2, 3}));
  CHECK(a.count() == 2);
  CHECK(!a.subset_of(b));
  CHECK((a & b).subset_of(b));
  CHECK(ModelSet::from_mask(2, 0b1010).members() == std::vector<std::uint32_t>{1, 3});
  CHECK(ModelSet::of(2, {1, 3}).mask() == 0b1010u);
  CHECK(a.to_string() == "{0, 1}");
}

TEST_CASE("formula_of builds the canonical full DNF") {
  ModelSet a = ModelSet::of(2, {1, 3});
  CHECK(formula_of(a)->to_string() == "x1 & !x2 | x1 & x2");
  CHECK(formula_of(ModelSet::none(2))->to_string() == "false");
}

TEST_CASE("round-trip: models(formula_of(A)) == A, exhaustively at n = 2") {
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    ModelSet a = ModelSet::from_mask(2, mask);
    CHECK(models(formula_of(a), 2) == a);
  }
}

TEST_CASE("round-trip holds on random sets at n = 4") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    ModelSet a = ModelSet::from_mask(4, rng() & 0xffff);
    CHECK(models(formula_of(a), 4) == a);
  }
}

TEST_CASE("to_string then parse is the identity on semantics") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    ModelSet a = ModelSet::from_mask(3, rng() & 0xff);
    Formula::Ptr f = formula_of(a);
    CHECK(models(parse_formula(f->to_string(), 3), 3) == a);
  }
}

TEST_CASE("var prefix switches the spelling") {
  Formula::Ptr f = parse_formula("p1 & p2", 2, 'p');
  CHECK(f->to_string('p') == "p1 & p2");
  CHECK(models(f, 2) == ModelSet::of(2, {3}));
  CHECK_THROWS_AS(parse_formula("x1 & x2", 2, 'p'), ParseError);
}

TEST_CASE("structural equality") {
  Formula::Ptr a = parse_formula("x1 & x2", 2);
  Formula::Ptr b = parse_formula("x1 & x2", 2);
  Formula::Ptr c = parse_formula("x2 & x1", 2);
  CHECK(Formula::equal(a, b));
  CHECK(!Formula::equal(a, c));
  CHECK(a->max_var() == 2);
}
