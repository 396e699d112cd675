#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "minrev/order.hpp"
#include "minrev/revision.hpp"

using namespace minrev;

namespace {

std::vector<std::uint32_t> identity_t(int m) {
  std::vector<std::uint32_t> t(m);
  std::iota(t.begin(), t.end(), 0u);
  return t;
}

// Direct reading of the definition, independent of revise(): collect the
// elements whose assignment satisfies phi, keep those with no strictly
// smaller such element, map back through t.
ModelSet revise_by_definition(const FaithfulStructure& f, const ModelSet& phi) {
  const int m = f.order.size();
  std::vector<int> candidates;
  for (int a = 0; a < m; ++a)
    if (phi.contains(f.t[a])) candidates.push_back(a);
  ModelSet out(f.var_count());
  for (int a : candidates) {
    bool minimal = true;
    for (int b : candidates)
      if (strict_less(f.order, b, a)) minimal = false;
    if (minimal) out.insert(f.t[a]);
  }
  return out;
}

PartialPreorder from_pairs(int m, const std::vector<std::pair<int, int>>& pairs) {
  return validate_preorder(relation_rows(m, pairs, true));
}

}  // namespace

TEST_CASE("faithfulness check accepts regular orders with the derived base") {
  PartialPreorder c = PartialPreorder::chain(4);
  auto t = identity_t(4);
  ModelSet k = knowledge_base_of(c, t);
  CHECK(k == ModelSet::of(2, {0}));
  CHECK(bool(check_faithful(c, t, k)));
  FaithfulStructure f = make_faithful(c, t, k);
  CHECK(f.var_count() == 2);
  CHECK(f.t_inverse()[3] == 3);
}

TEST_CASE("faithfulness check rejects bases that break either condition") {
  PartialPreorder c = PartialPreorder::chain(4);
  auto t = identity_t(4);
  // a non-minimal model of K
  auto chk = check_faithful(c, t, ModelSet::of(2, {0, 1}));
  CHECK(!chk.ok);
  CHECK(!chk.violation.empty());
  // minimal element missing from K: condition "models are exactly minimal"
  CHECK(!check_faithful(c, t, ModelSet::none(2)).ok);
  // two disjoint chains: minimal 0 is not below non-model 3
  PartialPreorder d = from_pairs(4, {{0, 1}, {2, 3}});
  CHECK(!check_faithful(d, identity_t(4), ModelSet::of(2, {0, 2})).ok);
  CHECK_THROWS_AS(make_faithful(d, identity_t(4), ModelSet::of(2, {0, 2})), ValidationError);
}

TEST_CASE("knowledge_base_of requires regularity and a bijection") {
  CHECK_THROWS_AS(knowledge_base_of(PartialPreorder::chain(3), identity_t(3)), ValidationError);
  std::vector<std::uint32_t> bad = {0, 0, 2, 3};
  CHECK_THROWS_AS(knowledge_base_of(PartialPreorder::chain(4), bad), Error);
}

TEST_CASE("revise agrees with the defining minimization on every input") {
  // all regular preorders on 4 elements, all 24 assignments, all 16 inputs
  std::vector<std::uint32_t> t = identity_t(4);
  int structures = 0;
  for (const PartialPreorder& r : enumerate_preorders(4)) {
    if (!is_regular(r)) continue;
    std::sort(t.begin(), t.end());
    do {
      FaithfulStructure f = faithful_from_regular(r, t);
      for (std::uint32_t mask = 0; mask < 16; ++mask) {
        ModelSet phi = ModelSet::from_mask(2, mask);
        CHECK(revise(f, phi) == revise_by_definition(f, phi));
      }
      ++structures;
    } while (std::next_permutation(t.begin(), t.end()));
  }
  CHECK(structures > 0);
}

TEST_CASE("revision with a satisfiable input intersecting K keeps the K part") {
  FaithfulStructure f = faithful_from_regular(PartialPreorder::chain(4), identity_t(4));
  // K = {0}; phi containing 0 revises to {0}
  CHECK(revise(f, ModelSet::of(2, {0, 3})) == ModelSet::of(2, {0}));
  // phi missing 0 picks the phi-minimal elements
  CHECK(revise(f, ModelSet::of(2, {2, 3})) == ModelSet::of(2, {2}));
  // unsatisfiable input revises to the empty set
  CHECK(revise(f, ModelSet::none(2)).empty());
}

TEST_CASE("materialized and view operators agree entry by entry") {
  FaithfulStructure f = faithful_from_regular(PartialPreorder::chain(4), identity_t(4));
  RevisionOperator mat = RevisionOperator::materialize(f);
  RevisionOperator view = RevisionOperator::view(f);
  CHECK(mat.materialized());
  CHECK(!view.materialized());
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    ModelSet phi = ModelSet::from_mask(2, mask);
    CHECK(mat.apply(phi) == view.apply(phi));
    CHECK(mat.apply_mask(mask) == view.apply(phi).mask());
  }
  // mask access and extensional comparison need a table behind them
  CHECK_THROWS_AS(view.apply_mask(3), Error);
  CHECK_THROWS_AS((void)(mat == view), Error);
  CHECK(mat == RevisionOperator::materialize(f));
}

TEST_CASE("from_table round trips and validates") {
  FaithfulStructure f = faithful_from_regular(PartialPreorder::chain(4), identity_t(4));
  RevisionOperator op = operator_table(f);
  RevisionOperator back = RevisionOperator::from_table(op.var_count(), op.table());
  CHECK(back == op);
  CHECK_THROWS_AS(RevisionOperator::from_table(2, {0, 1, 2}), Error);  // wrong length
  CHECK_THROWS_AS(RevisionOperator::from_table(5, {}), CapError);
}

TEST_CASE("reconstruction inverts operator_table on partial orders") {
  PartialPreorder r = from_pairs(4, {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}});
  REQUIRE(is_regular(r));
  FaithfulStructure f = faithful_from_regular(r, identity_t(4));
  PartialPreorder back = reconstruct_order(operator_table(f), {VerifyMode::Full, 0, 0});
  CHECK(back == r);
}

TEST_CASE("preorder ties reconstruct as incomparability with the same operator") {
  // 0 tied with 1, both below 2 and 3: a regular preorder, not a partial order
  PartialPreorder r = from_pairs(4, {{0, 1}, {1, 0}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  REQUIRE(is_regular(r));
  REQUIRE(!is_partial_order(r));
  FaithfulStructure f = faithful_from_regular(r, identity_t(4));
  RevisionOperator op = operator_table(f);
  // full verification passes: the tie-broken partial order yields the
  // identical operator
  PartialPreorder back = reconstruct_order(op, {VerifyMode::Full, 0, 0});
  CHECK(is_partial_order(back));
  CHECK(incomparable(back, 0, 1));
  CHECK(strict_less(back, 0, 2));
  FaithfulStructure g = faithful_from_regular(back, identity_t(4));
  CHECK(operator_table(g) == op);
}

TEST_CASE("reconstruction rejects tables no minimization produces") {
  FaithfulStructure f = faithful_from_regular(PartialPreorder::chain(4), identity_t(4));
  RevisionOperator op = operator_table(f);
  std::vector<std::uint32_t> table = op.table();
  // corrupt one non-pair entry; pairs still decode but verification trips
  table[0b0111] = 0b0100;  // op({0,1,2}) should be {0}
  RevisionOperator bad = RevisionOperator::from_table(2, table);
  CHECK_THROWS_AS(reconstruct_order(bad, {VerifyMode::Full, 0, 0}), ReconstructError);
  // pairwise-only mode does not look at the corrupted entry
  CHECK_NOTHROW(reconstruct_order(bad, {VerifyMode::Pairs, 0, 0}));
  // sampled verification finds it with enough draws
  ReconstructOptions sample{VerifyMode::Sample, 200, 12345};
  CHECK_THROWS_AS(reconstruct_order(bad, sample), ReconstructError);
}

TEST_CASE("reconstruction rejects inconsistent pair data") {
  std::vector<std::uint32_t> table(16, 0);
  for (std::uint32_t phi = 0; phi < 16; ++phi) table[phi] = phi;  // identity operator
  table[0b0011] = 0;  // op({0,1}) = {} is impossible for nonempty phi
  CHECK_THROWS_AS(reconstruct_order(RevisionOperator::from_table(2, table),
                                    {VerifyMode::Pairs, 0, 0}),
                  ReconstructError);
}

TEST_CASE("is_representable answers by family") {
  FaithfulStructure f = faithful_from_regular(PartialPreorder::chain(4), identity_t(4));
  RevisionOperator op = operator_table(f);
  auto regular = [](const PartialPreorder& r) { return is_regular(r); };
  auto never = [](const PartialPreorder&) { return false; };
  auto res = is_representable(op, regular, {VerifyMode::Full, 0, 0});
  REQUIRE(res.has_value());
  CHECK(res->order == PartialPreorder::chain(4));
  CHECK(res->k == ModelSet::of(2, {0}));
  CHECK(!is_representable(op, never, {VerifyMode::Full, 0, 0}).has_value());
}
