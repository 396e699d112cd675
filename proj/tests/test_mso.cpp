#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "minrev/errors.hpp"
#include "minrev/logic.hpp"
#include "minrev/mso.hpp"
#include "minrev/order.hpp"
#include "minrev/postulate.hpp"
#include "minrev/revision.hpp"

using namespace minrev;

namespace {

PartialPreorder from_pairs(int m, const std::vector<std::pair<int, int>>& pairs) {
  return validate_preorder(relation_rows(m, pairs, true));
}

PartialPreorder chain(int m) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
  return from_pairs(m, pairs);
}

PartialPreorder antichain(int m) { return from_pairs(m, {}); }

std::vector<std::vector<std::uint32_t>> bijections4() {
  std::vector<std::uint32_t> t = {0, 1, 2, 3};
  std::vector<std::vector<std::uint32_t>> out;
  do out.push_back(t);
  while (std::next_permutation(t.begin(), t.end()));
  return out;
}

std::vector<PartialPreorder> regular_preorders4() {
  std::vector<PartialPreorder> out;
  for (PartialPreorder& r : enumerate_preorders(4))
    if (is_regular(r)) out.push_back(std::move(r));
  return out;
}

}  // namespace

TEST_CASE("fo dsl round-trips and expands strictness sugar") {
  const std::string canonical = "forall x. exists y. y <= x & !(x <= y) -> A1(y) | x = y";
  CHECK(to_string(parse_fo(canonical)) == canonical);
  CHECK(to_string(parse_fo("forall x. exists y. y < x")) ==
        "forall x. exists y. y <= x & !(x <= y)");
  CHECK(to_string(parse_fo("forall x. min(x)")) ==
        "forall x. forall v1. !(v1 <= x & !(x <= v1))");
  // redundant parentheses vanish, structure survives
  const FOSentence a = parse_fo("forall x. ((A1(x)) & (A2(x)))");
  const FOSentence b = parse_fo("forall x. A1(x) & A2(x)");
  CHECK(alpha_equal(a, b));
  CHECK(a.ell == 2);
  CHECK(parse_fo("forall x. x = x").ell == 0);
}

TEST_CASE("min macro expands to the guarded minimality formula") {
  CHECK(to_string(min_macro("A1")) ==
        "forall x. A1(x) & (forall v1. A1(v1) -> !(v1 <= x & !(x <= v1)))");
  CHECK(to_string(min_macro("")) == "forall x. forall v1. !(v1 <= x & !(x <= v1))");
  CHECK(min_macro("A1 & A2").ell == 2);
  CHECK(min_macro("A3").ell == 3);
  CHECK(min_macro("").ell == 0);
  // the parser's macro path builds the identical tree
  CHECK(alpha_equal(min_macro("A1"), parse_fo("forall x. min[A1](x)")));
  CHECK(alpha_equal(min_macro("A1 | !A2"), parse_fo("forall x. min[A1 | !A2](x)")));
  CHECK(alpha_equal(min_macro(""), parse_fo("forall x. min(x)")));
}

TEST_CASE("trivial macro arguments collapse as expected") {
  // min[true] and plain min agree pointwise: compare the open bodies under a
  // shared binder. Both expansions use slot 1 for their fresh variable, in
  // disjoint subtrees, so one name list serves.
  const FOSentence within_true = min_macro("true");
  const FOSentence plain = min_macro("");
  FOSentence cmp;
  cmp.ell = 0;
  cmp.var_names = {"x", "v1"};
  cmp.body = FONode::quantifier(
      FONode::Kind::Forall, 0,
      FONode::binary(FONode::Kind::Iff, within_true.body->lhs(), plain.body->lhs()));
  FOSentence unsat;
  unsat.ell = 0;
  unsat.var_names = {"x", "v1"};
  unsat.body = FONode::quantifier(FONode::Kind::Forall, 0,
                                  FONode::negation(min_macro("false").body->lhs()));
  int structures = 0;
  for (int m = 1; m <= 4; ++m) {
    for (const PartialPreorder& r : enumerate_preorders(m)) {
      ExtendedStructure s{r, {}};
      CHECK(eval_fo(s, cmp));
      CHECK(eval_fo(s, unsat));
      ++structures;
    }
  }
  CHECK(structures == 1 + 4 + 29 + 355);
}

TEST_CASE("translation rewrites K and Kstar into minimality macros") {
  CHECK(alpha_equal(translate(builtin_postulate("agm-success")),
                    parse_fo("(exists x. A1(x)) -> (exists x. min[A1](x))")));
  CHECK(alpha_equal(translate(builtin_postulate("agm-success-k")),
                    parse_fo("(exists x. min(x)) -> (exists x. min[A1](x))")));
  CHECK_FALSE(alpha_equal(translate(builtin_postulate("agm-success")),
                          translate(builtin_postulate("agm-success-k"))));

  const Postulate sub = builtin_postulate("agm-subexpansion");
  const FOSentence tau = translate(sub);
  CHECK(tau.ell == 2);
  CHECK(to_string(tau) ==
        "(exists x. A1(x) & (forall v1. A1(v1) -> !(v1 <= x & !(x <= v1))) & A2(x)) -> "
        "(forall y. A1(y) & A2(y) & (forall v2. A1(v2) & A2(v2) -> !(v2 <= y & !(y <= v2))) "
        "-> A1(y) & (forall v3. A1(v3) -> !(v3 <= y & !(y <= v3))) & A2(y))");
  // printing expands every macro, so a reparse is a fixed point
  CHECK(alpha_equal(parse_fo(to_string(tau)), tau));
}

TEST_CASE("fresh macro variables skip names the sentence already binds") {
  const Postulate p = parse_postulate("forall v1. Kstar[p1](v1) -> p1(v1)");
  CHECK(to_string(translate(p)) ==
        "forall v1. A1(v1) & (forall v2. A1(v2) -> !(v2 <= v1 & !(v1 <= v2))) -> A1(v1)");
  CHECK(to_string(parse_fo("forall v1. min(v1)")) ==
        "forall v1. forall v2. !(v2 <= v1 & !(v1 <= v2))");
}

TEST_CASE("alpha equality ignores bound names and nothing else") {
  CHECK(alpha_equal(parse_fo("forall x. exists y. x <= y"),
                    parse_fo("forall a. exists b. a <= b")));
  CHECK_FALSE(alpha_equal(parse_fo("forall x. exists y. x <= y"),
                          parse_fo("forall a. exists b. b <= a")));
  CHECK_FALSE(alpha_equal(parse_fo("forall x. A1(x)"), parse_fo("forall x. A2(x)")));
  CHECK_FALSE(alpha_equal(parse_fo("forall x. x = x"), parse_fo("exists x. x = x")));
  // shadowing pairs binders positionally
  CHECK(alpha_equal(parse_fo("forall x. forall x. x = x"),
                    parse_fo("forall a. forall b. b = b")));
  CHECK_FALSE(alpha_equal(parse_fo("forall x. forall x. x = x"),
                          parse_fo("forall a. forall b. a = a")));
}

TEST_CASE("fo parse errors carry usable messages") {
  CHECK_THROWS_AS(parse_fo("forall x. min[A1 &](x)"), ParseError);
  CHECK_THROWS_AS(parse_fo("forall x. A10(x)"), ParseError);
  CHECK_THROWS_AS(parse_fo("forall x. min[p1](x)"), ParseError);  // nu ranges over A1..A9
  CHECK_THROWS_AS(parse_fo("forall x. x <= x extra"), ParseError);
  CHECK_THROWS_AS(parse_fo("forall x. min(x"), ParseError);
  CHECK_THROWS_AS(parse_fo("forall min. min <= min"), ParseError);
  CHECK_THROWS_AS(parse_fo(""), ParseError);
  try {
    parse_fo("forall x. x <= y");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("free variable") != std::string::npos);
  }
}

TEST_CASE("extension pulls interpretations back through t") {
  const PartialPreorder r = chain(4);
  const std::vector<std::uint32_t> t = {2, 0, 3, 1};
  const FaithfulStructure f = faithful_from_regular(r, t);
  const ModelSet phi = ModelSet::from_mask(2, 0b0110);  // assignments 1 and 2
  const ExtendedStructure ext = extension_of(f, {phi});
  REQUIRE(ext.a_sets.size() == 1);
  for (int e = 0; e < 4; ++e) CHECK(ext.a_sets[0].test(e) == phi.contains(t[e]));
  CHECK(ext.a_sets[0].to_mask() == 0b1001);
  CHECK_THROWS_AS(extension_of(f, {ModelSet::from_mask(3, 1)}), Error);
}

TEST_CASE("fo evaluation matches hand judgments") {
  // 0 and 1 minimal, both below 2 and 3
  const PartialPreorder two_min = from_pairs(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  const ExtendedStructure s{two_min, {}};
  CHECK(eval_fo(s, parse_fo("exists x. exists y. !(x = y) & min(x) & min(y)")));
  CHECK(eval_fo(s, parse_fo("forall x. forall y. forall z. "
                            "min(x) & min(y) & min(z) -> x = y | x = z | y = z")));

  const ExtendedStructure c{chain(3), {}};
  CHECK(eval_fo(c, parse_fo("exists x. forall y. x <= y")));
  CHECK_FALSE(eval_fo(c, parse_fo("forall x. min(x)")));

  const ExtendedStructure a{antichain(3), {}};
  CHECK(eval_fo(a, parse_fo("forall x. min(x)")));
  CHECK_FALSE(eval_fo(a, parse_fo("exists x. exists y. x <= y & !(x = y)")));
  // a sentence may not mention more subsets than the structure carries
  CHECK_THROWS_AS(eval_fo(a, parse_fo("exists x. A1(x)")), Error);
}

TEST_CASE("postulate evaluation and translated fo evaluation stay in lockstep") {
  const auto regs = regular_preorders4();
  REQUIRE(regs.size() == 199);
  const auto ts = bijections4();
  std::mt19937_64 rng(2024);
  for (const char* name : {"agm-success", "agm-success-k", "agm-subexpansion"}) {
    const Postulate p = builtin_postulate(name);
    const FOSentence tau = translate(p);
    for (int i = 0; i < 60; ++i) {
      const PartialPreorder& r = regs[rng() % regs.size()];
      const FaithfulStructure f = faithful_from_regular(r, ts[rng() % ts.size()]);
      const RevisionOperator op = operator_table(f);
      std::vector<ModelSet> phis;
      for (int j = 0; j < p.ell; ++j) phis.push_back(ModelSet::from_mask(2, rng() & 0xf));
      CHECK(check_prop_equivalence(f, op, tau, p, phis));
    }
  }
  // convenience overload tabulates and translates itself
  const FaithfulStructure f = faithful_from_regular(chain(4), {0, 1, 2, 3});
  CHECK(check_prop_equivalence(f, builtin_postulate("agm-subexpansion"),
                               {ModelSet::from_mask(2, 0b1110), ModelSet::from_mask(2, 0b0110)}));
}

TEST_CASE("universal mso wrapper parses fixed and inferred set counts") {
  const UMSOSentence one = parse_umso("forallsets A1. forall x. A1(x)");
  CHECK(one.ell == 1);
  CHECK(to_string(one) == "forallsets A1. forall x. A1(x)");

  const UMSOSentence three = parse_umso("forallsets A1..A3. exists x. A3(x)");
  CHECK(three.ell == 3);
  CHECK(three.body.ell == 3);
  CHECK(to_string(three) == "forallsets A1..A3. exists x. A3(x)");

  // a bare fo sentence is promoted; ell is the largest index used
  const UMSOSentence bare = parse_umso("exists x. A2(x)");
  CHECK(bare.ell == 2);

  CHECK_THROWS_AS(parse_umso("forallsets A2. exists x. A2(x)"), ParseError);
  CHECK_THROWS_AS(parse_fo("forallsets A1. forall x. A1(x)"), ParseError);
  try {
    parse_umso("forallsets A1..A2. exists x. A3(x)");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("beyond the declared") != std::string::npos);
  }
}

TEST_CASE("universal evaluation scans subset tuples in order") {
  const PartialPreorder c4 = chain(4);

  const UMSOVerdict taut = eval_umso(c4, parse_umso("forallsets A1. forall x. A1(x) | !A1(x)"));
  CHECK(taut.holds);
  CHECK(taut.tuples_checked == 16);
  CHECK_FALSE(taut.witness.has_value());

  const UMSOVerdict empty_fails = eval_umso(c4, parse_umso("forallsets A1. exists x. A1(x)"));
  CHECK_FALSE(empty_fails.holds);
  CHECK(empty_fails.tuples_checked == 1);
  REQUIRE(empty_fails.witness.has_value());
  REQUIRE(empty_fails.witness->size() == 1);
  CHECK((*empty_fails.witness)[0].none());

  // A1-major order: the first failure of A1 subset-of A2 is A1 = {0}, A2 = {}
  const UMSOVerdict sub =
      eval_umso(c4, parse_umso("forallsets A1..A2. forall x. A1(x) -> A2(x)"));
  CHECK_FALSE(sub.holds);
  CHECK(sub.tuples_checked == 17);
  REQUIRE(sub.witness.has_value());
  CHECK((*sub.witness)[0].to_mask() == 0b0001);
  CHECK((*sub.witness)[1].to_mask() == 0);

  const UMSOVerdict succ =
      eval_umso(c4, UMSOSentence{1, translate(builtin_postulate("agm-success"))});
  CHECK(succ.holds);
  CHECK(succ.tuples_checked == 16);
}

TEST_CASE("universal mso evaluation agrees with postulate satisfaction") {
  const auto regs = regular_preorders4();
  const auto ts = bijections4();
  for (const char* name : {"agm-success", "agm-subexpansion"}) {
    const Postulate p = builtin_postulate(name);
    const UMSOSentence u{p.ell, translate(p)};
    for (std::size_t i = 0; i < regs.size(); i += 7) {
      const UMSOVerdict left = eval_umso(regs[i], u);
      for (const auto& t : ts) {
        const FaithfulStructure f = faithful_from_regular(regs[i], t);
        const SatisfactionVerdict right = satisfies(operator_table(f), f.k, p, {});
        CHECK(left.holds == right.holds);
      }
    }
  }

  // over t = identity the two scans enumerate the same tuples in the same
  // order, so the first falsifier must coincide bit for bit
  const PartialPreorder bad = from_pairs(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
  REQUIRE(is_regular(bad));
  REQUIRE_FALSE(is_total(bad));
  const Postulate p = builtin_postulate("agm-subexpansion");
  const UMSOVerdict left = eval_umso(bad, UMSOSentence{2, translate(p)});
  const FaithfulStructure f = faithful_from_regular(bad, {0, 1, 2, 3});
  const SatisfactionVerdict right = satisfies(operator_table(f), f.k, p, {});
  REQUIRE_FALSE(left.holds);
  REQUIRE_FALSE(right.holds);
  REQUIRE(left.witness.has_value());
  REQUIRE(right.counterexample.has_value());
  CHECK(left.tuples_checked == right.tuples_checked);
  for (int i = 0; i < 2; ++i)
    CHECK((*left.witness)[i].to_mask() == (*right.counterexample)[i].mask());
}

TEST_CASE("universal evaluation caps the exhaustive scan and samples reproducibly") {
  const PartialPreorder c5 = chain(5);
  const UMSOSentence wide = parse_umso("forallsets A1..A5. exists x. A5(x)");
  CHECK_THROWS_AS(eval_umso(c5, wide), CapError);  // 2^25 subset tuples

  UMSOOptions sampled;
  sampled.exhaustive = false;
  sampled.samples = 40;
  sampled.seed = 424242;
  const UMSOVerdict v1 = eval_umso(c5, wide, sampled);
  const UMSOVerdict v2 = eval_umso(c5, wide, sampled);
  CHECK(v1.holds == v2.holds);
  CHECK(v1.tuples_checked == v2.tuples_checked);
  REQUIRE(v1.witness.has_value() == v2.witness.has_value());
  if (v1.witness) CHECK(*v1.witness == *v2.witness);

  const UMSOSentence taut = parse_umso("forallsets A1. forall x. A1(x) | !A1(x)");
  const UMSOVerdict t = eval_umso(c5, taut, sampled);
  CHECK(t.holds);
  CHECK(t.tuples_checked == 40);
}

TEST_CASE("scan parallelism does not change universal verdicts") {
  const PartialPreorder c4 = chain(4);
  const UMSOSentence sub = parse_umso("forallsets A1..A2. forall x. A1(x) -> A2(x)");
  const UMSOVerdict base = eval_umso(c4, sub);
  REQUIRE(base.witness.has_value());
  for (int jobs : {2, 3, 8}) {
    UMSOOptions o;
    o.jobs = jobs;
    const UMSOVerdict v = eval_umso(c4, sub, o);
    CHECK(v.holds == base.holds);
    CHECK(v.tuples_checked == base.tuples_checked);
    REQUIRE(v.witness.has_value());
    CHECK(*v.witness == *base.witness);
  }
}
