#include "minrev/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <random>
#include <sstream>

#include "minrev/crown.hpp"
#include "minrev/ef.hpp"
#include "minrev/errors.hpp"
#include "minrev/json_io.hpp"
#include "minrev/logic.hpp"
#include "minrev/mso.hpp"
#include "minrev/neighborhood.hpp"
#include "minrev/order.hpp"
#include "minrev/postulate.hpp"
#include "minrev/revision.hpp"
#include "minrev/structure.hpp"
#include "minrev/swap.hpp"

namespace minrev {

namespace {

std::vector<std::vector<std::uint32_t>> bijections4() {
  std::vector<std::uint32_t> perm{0, 1, 2, 3};
  std::vector<std::vector<std::uint32_t>> out;
  do out.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<PartialPreorder> regular_preorders4() {
  std::vector<PartialPreorder> out;
  for (const PartialPreorder& r : enumerate_preorders(4))
    if (is_regular(r)) out.push_back(r);
  return out;
}

std::string tuple_to_string(const std::vector<ModelSet>& phis) {
  std::string s = "(";
  for (std::size_t i = 0; i < phis.size(); ++i) {
    if (i) s += ", ";
    s += phis[i].to_string();
  }
  return s + ")";
}

// ---- criterion 1: logic round-trip ----------------------------------------

std::string criterion_logic() {
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    ModelSet a = ModelSet::from_mask(2, mask);
    if (!(models(*formula_of(a), 2) == a))
      return "round-trip failed at n=2 for " + a.to_string();
  }
  std::mt19937_64 rng(1);
  for (int i = 0; i < 256; ++i) {
    ModelSet a = ModelSet::from_mask(3, rng() & 0xff);
    if (!(models(*formula_of(a), 3) == a))
      return "round-trip failed at n=3 for " + a.to_string();
  }
  return "";
}

// ---- criterion 2: built-in postulates under minimization --------------------

// The success postulate must come back clean on every structure. The
// subexpansion direction is different: it characterizes faithful TOTAL
// preorders, and on a non-total regular preorder minimization provably
// violates it (two incomparable survivors of p1 & p2 where one is dominated
// inside p1). The sweep over all regular preorders therefore cannot be
// clean; this criterion verifies the exact split instead, and the acceptance
// gate pins the resulting "expected failure" diagnostic.
std::string criterion_postulates(int jobs, int* structures) {
  const auto regs = regular_preorders4();
  const auto ts = bijections4();
  const Postulate success = builtin_postulate("agm-success");
  const Postulate subexp = builtin_postulate("agm-subexpansion");
  SatisfiesOptions so;
  so.jobs = jobs;
  *structures = 0;
  int total_orders = 0;
  int nontotal_failing = 0;
  std::string first;
  for (const PartialPreorder& r : regs) {
    const bool total = is_total(r);
    if (total) ++total_orders;
    bool failed_here = false;
    for (const auto& t : ts) {
      FaithfulStructure f = faithful_from_regular(r, t);
      RevisionOperator op = operator_table(f);
      ++*structures;
      SatisfactionVerdict v = satisfies(op, f.k, success, so);
      if (!v.holds)
        return "success postulate failed, counterexample " +
               tuple_to_string(*v.counterexample);
      v = satisfies(op, f.k, subexp, so);
      if (!v.holds) {
        if (total)
          return "subexpansion failed on a total regular preorder, counterexample " +
                 tuple_to_string(*v.counterexample);
        failed_here = true;
        if (first.empty()) first = tuple_to_string(*v.counterexample);
      }
    }
    if (failed_here) ++nontotal_failing;
  }
  if (nontotal_failing == 0) return "";
  return "expected failure: subexpansion characterizes total preorders; it holds on all " +
         std::to_string(total_orders) + " total regular preorders but fails on " +
         std::to_string(nontotal_failing) + " of " +
         std::to_string(int(regs.size()) - total_orders) +
         " non-total ones, first counterexample " + first +
         "; a clean sweep over every regular preorder is unattainable";
}

// ---- criterion 3: translation equivalence ----------------------------------

Formula::Ptr random_mu(std::mt19937_64& rng, int ell, int depth) {
  if (depth == 0 || rng() % 3 == 0)
    return Formula::variable(1 + static_cast<int>(rng() % ell));
  switch (rng() % 4) {
    case 0:
      return Formula::negation(random_mu(rng, ell, depth - 1));
    case 1:
      return Formula::conjunction(random_mu(rng, ell, depth - 1), random_mu(rng, ell, depth - 1));
    case 2:
      return Formula::disjunction(random_mu(rng, ell, depth - 1), random_mu(rng, ell, depth - 1));
    default:
      return Formula::constant(rng() % 2 == 0);
  }
}

struct PostulateGen {
  std::mt19937_64& rng;
  int ell;
  std::vector<Formula::Ptr> mus;
  std::vector<std::string> names;
  // Ids are allocated globally but an atom may only use ones bound by the
  // quantifiers enclosing it, so the generator carries the current path's
  // scope explicitly.
  std::vector<int> scope;

  int bind() {
    names.push_back("g" + std::to_string(names.size() + 1));
    return static_cast<int>(names.size()) - 1;
  }

  int scoped_var() { return scope[rng() % scope.size()]; }

  PBody::Ptr atom() {
    const int v = scoped_var();
    switch (rng() % 5) {
      case 0:
        return PBody::k_atom(v);
      case 1:
        return PBody::phi_atom(1 + static_cast<int>(rng() % ell), v);
      case 2:
        mus.push_back(random_mu(rng, ell, 2));
        return PBody::star_atom(static_cast<int>(mus.size()) - 1, v);
      case 3:
        return PBody::eq_atom(v, scoped_var());
      default:
        return PBody::constant(rng() % 2 == 0);
    }
  }

  PBody::Ptr gen(int depth) {
    if (depth == 0) return scope.empty() ? PBody::constant(true) : atom();
    const std::uint64_t roll = rng() % 8;
    if (scope.empty() || roll < 2) {
      const PBody::Kind k = rng() % 2 == 0 ? PBody::Kind::Forall : PBody::Kind::Exists;
      const int v = bind();
      scope.push_back(v);
      PBody::Ptr inner = gen(depth - 1);
      scope.pop_back();
      return PBody::quantifier(k, v, std::move(inner));
    }
    switch (roll) {
      case 2:
        return PBody::negation(gen(depth - 1));
      case 3:
      case 4:
      case 5:
      case 6: {
        const PBody::Kind k = roll == 3   ? PBody::Kind::And
                              : roll == 4 ? PBody::Kind::Or
                              : roll == 5 ? PBody::Kind::Implies
                                          : PBody::Kind::Iff;
        PBody::Ptr lhs = gen(depth - 1);
        PBody::Ptr rhs = gen(depth - 1);
        return PBody::binary(k, std::move(lhs), std::move(rhs));
      }
      default:
        return atom();
    }
  }
};

Postulate random_postulate(std::mt19937_64& rng) {
  PostulateGen g{rng, 1 + static_cast<int>(rng() % 2), {}, {}, {}};
  PBody::Ptr body = g.gen(4);
  Postulate p;
  p.ell = g.ell;
  p.mus = std::move(g.mus);
  p.var_names = std::move(g.names);
  p.body = std::move(body);
  return p;
}

std::string criterion_translation(std::uint64_t* checked) {
  const auto regs = regular_preorders4();
  const auto ts = bijections4();
  *checked = 0;
  for (const char* name : {"agm-success", "agm-subexpansion"}) {
    const Postulate p = builtin_postulate(name);
    const FOSentence tau = translate(p);
    for (const PartialPreorder& r : regs) {
      for (const auto& t : ts) {
        FaithfulStructure f = faithful_from_regular(r, t);
        RevisionOperator op = operator_table(f);
        const std::uint64_t total = std::uint64_t{1} << (4 * p.ell);
        for (std::uint64_t code = 0; code < total; ++code) {
          std::vector<ModelSet> phis;
          std::uint64_t c = code;
          for (int i = 0; i < p.ell; ++i) {
            phis.push_back(ModelSet::from_mask(2, c & 0xf));
            c >>= 4;
          }
          ++*checked;
          if (!check_prop_equivalence(f, op, tau, p, phis))
            return std::string("sides disagree for ") + name + " at tuple " +
                   tuple_to_string(phis);
        }
      }
    }
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const PartialPreorder& r = regs[rng() % regs.size()];
    const auto& t = ts[rng() % ts.size()];
    FaithfulStructure f = faithful_from_regular(r, t);
    RevisionOperator op = operator_table(f);
    const Postulate p = random_postulate(rng);
    const FOSentence tau = translate(p);
    std::vector<ModelSet> phis;
    for (int j = 0; j < p.ell; ++j) phis.push_back(ModelSet::from_mask(2, rng() & 0xf));
    ++*checked;
    if (!check_prop_equivalence(f, op, tau, p, phis))
      return "sides disagree for seeded random postulate " + std::to_string(i);
  }
  return "";
}

// ---- criterion 4: order reconstruction --------------------------------------

std::string criterion_reconstruction(int* orders) {
  const auto ts = bijections4();
  *orders = 0;
  for (const PartialPreorder& r : enumerate_preorders(4)) {
    if (!is_partial_order(r) || !is_regular(r)) continue;
    ++*orders;
    for (const auto& t : ts) {
      FaithfulStructure f = faithful_from_regular(r, t);
      PartialPreorder rebuilt = reconstruct_order(operator_table(f));
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          if (rebuilt.leq(static_cast<int>(t[a]), static_cast<int>(t[b])) != r.leq(a, b))
            return "relabeled reconstruction mismatch at (" + std::to_string(a) + ", " +
                   std::to_string(b) + ")";
    }
  }
  return "";
}

// ---- criterion 5: golden translation ----------------------------------------

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string criterion_golden(const std::string& path) {
  if (path.empty()) return "no golden file path supplied";
  std::string golden;
  try {
    golden = trim(read_text_file(path));
  } catch (const Error& e) {
    return e.what();
  }
  const FOSentence tau = translate(builtin_postulate("agm-subexpansion"));
  const std::string rendered = to_string(tau);
  if (rendered != golden)
    return "rendering differs from golden file:\n  got:      " + rendered +
           "\n  expected: " + golden;
  if (!alpha_equal(tau, parse_fo(golden))) return "golden file parses to a different sentence";
  return "";
}

// ---- criterion 6: game solver sanity ----------------------------------------

RelationalStructure random_colored_graph(std::mt19937_64& rng, int m, int color_count) {
  RelationalStructure g = RelationalStructure::graph(m);
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v)
      if (rng() % 2 == 0) g.add_edge(u, v);
  for (int c = 0; c < color_count; ++c) {
    const int idx = g.add_color("A" + std::to_string(c + 1));
    for (int v = 0; v < m; ++v)
      if (rng() % 2 == 0) g.colors[static_cast<std::size_t>(idx)].set(v);
  }
  return g;
}

std::vector<int> random_permutation(std::mt19937_64& rng, int m) {
  std::vector<int> perm(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = m - 1; i > 0; --i)
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(rng() % (i + 1))]);
  return perm;
}

std::string criterion_games() {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 6);
    RelationalStructure g = random_colored_graph(rng, m, static_cast<int>(rng() % 3));
    RelationalStructure h = permuted(g, random_permutation(rng, m));
    for (int q = 1; q <= 3; ++q)
      if (!q_equivalent(g, h, q))
        return "isomorphic pair separated at q=" + std::to_string(q) + ", trial " +
               std::to_string(trial);
  }

  RelationalStructure c6 = cycle_structure(6);
  RelationalStructure c33 = disjoint_union(cycle_structure(3), cycle_structure(3));
  if (ef_game(c6, c33, 2).winner != Winner::Duplicator)
    return "6-cycle vs two 3-cycles should be level at q=2";
  if (ef_game(c6, c33, 3).winner != Winner::Spoiler)
    return "6-cycle vs two 3-cycles should separate at q=3";

  RelationalStructure chain2 = RelationalStructure::from_order(PartialPreorder::chain(2));
  RelationalStructure chain3 = RelationalStructure::from_order(PartialPreorder::chain(3));
  if (ef_game(chain2, chain3, 2).winner != Winner::Spoiler)
    return "2-chain vs 3-chain should separate at q=2";
  return "";
}

// ---- criterion 7: neighborhood bijection implies game equivalence -----------

void rotate_color_sets(RelationalStructure& g, int shift) {
  for (DynBitset& c : g.colors) {
    DynBitset rotated(static_cast<std::size_t>(g.m));
    for (int v : c.elements()) rotated.set((v + shift) % g.m);
    c = rotated;
  }
}

std::string criterion_hanf(int* matched, int* total) {
  std::mt19937_64 rng(13);
  *matched = 0;
  *total = 0;

  struct Pair {
    RelationalStructure s1, s2;
    int q = 1;
  };
  std::vector<Pair> corpus;

  auto random_subsets = [&](RelationalStructure& g, int ell) {
    for (int c = 0; c < ell; ++c) {
      const int idx = g.add_color("A" + std::to_string(c + 1));
      for (int v = 0; v < g.m; ++v)
        if (rng() % 2 == 0) g.colors[static_cast<std::size_t>(idx)].set(v);
    }
  };

  for (int i = 0; i < 10; ++i) {  // identical colored cycles
    const int m = 12 + static_cast<int>(rng() % 8);
    RelationalStructure g = cycle_structure(m);
    random_subsets(g, 1 + static_cast<int>(rng() % 2));
    corpus.push_back({g, g, 1 + static_cast<int>(rng() % 2)});
  }
  for (int i = 0; i < 10; ++i) {  // rotated colorings of one cycle
    const int m = 16 + static_cast<int>(rng() % 10);
    RelationalStructure g = cycle_structure(m);
    random_subsets(g, 1);
    RelationalStructure h = g;
    rotate_color_sets(h, 1 + static_cast<int>(rng() % (m - 1)));
    corpus.push_back({g, h, 1 + static_cast<int>(rng() % 2)});
  }
  for (int i = 0; i < 10; ++i) {  // cycle vs path of equal length
    const int m = 10 + static_cast<int>(rng() % 10);
    RelationalStructure g = cycle_structure(m);
    RelationalStructure h = path_structure(m);
    const int ell = static_cast<int>(rng() % 2);
    random_subsets(g, ell);
    random_subsets(h, ell);
    corpus.push_back({g, h, 1});
  }
  for (int i = 0; i < 10; ++i) {  // two marks at different separations
    const int m = 20 + 2 * static_cast<int>(rng() % 5);
    RelationalStructure g = cycle_structure(m);
    RelationalStructure h = g;
    const int c1 = g.add_color("A1");
    g.colors[static_cast<std::size_t>(c1)].set(0);
    g.colors[static_cast<std::size_t>(c1)].set(m / 2);
    const int c2 = h.add_color("A1");
    h.colors[static_cast<std::size_t>(c2)].set(0);
    h.colors[static_cast<std::size_t>(c2)].set(m / 2 - 2 - static_cast<int>(rng() % 3));
    corpus.push_back({g, h, 1});
  }
  for (int i = 0; i < 5; ++i) {  // random colored paths
    const int m = 8 + static_cast<int>(rng() % 8);
    RelationalStructure g = path_structure(m);
    RelationalStructure h = path_structure(m);
    random_subsets(g, 1);
    random_subsets(h, 1);
    corpus.push_back({g, h, 1 + static_cast<int>(rng() % 2)});
  }
  for (int i = 0; i < 5; ++i) {  // small q=3 rotated cycles
    const int m = 10 + static_cast<int>(rng() % 4);
    RelationalStructure g = cycle_structure(m);
    random_subsets(g, 1);
    RelationalStructure h = g;
    rotate_color_sets(h, 1 + static_cast<int>(rng() % (m - 1)));
    corpus.push_back({g, h, 3});
  }

  for (const Pair& pair : corpus) {
    ++*total;
    const int r = locality_radius(pair.q);
    if (!hanf_check(pair.s1, pair.s2, r)) continue;
    ++*matched;
    if (!q_equivalent(pair.s1, pair.s2, pair.q))
      return "pair " + std::to_string(*total - 1) +
             " has matching neighborhoods but loses the game at q=" + std::to_string(pair.q);
  }
  if (*matched == 0) return "corpus produced no matching pair; the check ran vacuously";
  return "";
}

// ---- criterion 8: cycle split pipeline ---------------------------------------

std::string criterion_split() {
  const CrownOrder m1 = extend_with_bottom(build_crown(64), 128);
  if (!is_regular(m1.order)) return "the 256-element input order should be regular";
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    DynBitset ext(static_cast<std::size_t>(m1.order.size()));
    for (int v = 0; v < m1.order.size(); ++v)
      if (rng() % 2 == 0) ext.set(v);
    SplitReport report = verify_crown_split(m1, 1, {ext});
    if (!report.verdict) {
      std::string why = !report.sizes_match          ? "sizes differ"
                        : !report.double_crown       ? "result is not an extended double crown"
                        : !report.regular_preserved  ? "result is not regular-disconnected"
                                                     : "game equivalence fails";
      return "seed " + std::to_string(seed) + ": " + why;
    }
  }
  return "";
}

// ---- criterion 9: family separation witness ----------------------------------

std::string criterion_separation() {
  const CrownOrder single = extend_with_bottom(build_crown(6), 4);
  const CrownOrder twin = extend_with_bottom(build_double_crown(3, 3), 4);
  std::vector<std::uint32_t> identity(16);
  for (std::uint32_t i = 0; i < 16; ++i) identity[i] = i;

  ReconstructOptions opts;
  opts.mode = VerifyMode::Sample;
  opts.samples = 1000;
  opts.seed = 17;

  RevisionOperator op_single = operator_table(faithful_from_regular(single.order, identity));
  RevisionOperator op_twin = operator_table(faithful_from_regular(twin.order, identity));

  const FamilyOracle rd = family_oracle("regular-disconnected");
  const FamilyOracle ec = family_oracle("extended-crown");

  if (!is_representable(op_twin, rd, opts))
    return "double-crown operator should be representable in regular-disconnected";
  if (is_representable(op_twin, ec, opts))
    return "double-crown operator should not be representable among single crowns";
  if (!is_representable(op_single, ec, opts))
    return "single-crown operator should be representable among single crowns";
  if (is_representable(op_single, rd, opts))
    return "single-crown operator should not be representable in regular-disconnected";
  return "";
}

}  // namespace

std::vector<CriterionResult> run_selftest(const SelftestOptions& opts) {
  using Clock = std::chrono::steady_clock;
  std::vector<CriterionResult> out;

  auto run = [&](int index, const std::string& name, double budget, auto&& body) {
    CriterionResult r;
    r.index = index;
    r.name = name;
    r.budget_seconds = budget;
    const auto start = Clock::now();
    try {
      r.detail = body();
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (r.passed && r.seconds > r.budget_seconds) {
      r.passed = false;
      r.detail = "over budget";
    }
    out.push_back(std::move(r));
  };

  run(1, "logic round-trip", 1.0, [] { return criterion_logic(); });
  run(2, "built-in postulates under minimization", 60.0, [&] {
    int structures = 0;
    return criterion_postulates(opts.jobs, &structures);
  });
  run(3, "translation equivalence", 300.0, [] {
    std::uint64_t checked = 0;
    return criterion_translation(&checked);
  });
  run(4, "order reconstruction", 60.0, [] {
    int orders = 0;
    return criterion_reconstruction(&orders);
  });
  run(5, "translation golden output", 1.0, [&] { return criterion_golden(opts.golden_path); });
  run(6, "game solver sanity", 60.0, [] { return criterion_games(); });
  run(7, "neighborhood bijection implies game equivalence", 300.0, [] {
    int matched = 0, total = 0;
    return criterion_hanf(&matched, &total);
  });
  run(8, "cycle split pipeline", 600.0, [] { return criterion_split(); });
  run(9, "family separation witness", 300.0, [] { return criterion_separation(); });
  return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed; });
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out << "criterion " << r.index << " [" << (r.passed ? "pass" : "FAIL") << "] " << r.name << " ("
      << std::fixed;
  out.precision(2);
  out << r.seconds << "s / budget ";
  out.precision(0);
  out << r.budget_seconds << "s)";
  if (!r.detail.empty()) out << ": " << r.detail;
  return out.str();
}

}  // namespace minrev
