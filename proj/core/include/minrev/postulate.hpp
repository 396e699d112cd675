#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minrev/logic.hpp"
#include "minrev/revision.hpp"

namespace minrev {

/// Body of a postulate: a first-order sentence over element variables with
/// unary atoms K(x), p_i(x), Kstar[mu](x) and equality. Star atoms index
/// into the postulate's mu list.
class PBody {
 public:
  enum class Kind {
    True,
    False,
    Forall,
    Exists,
    Not,
    And,
    Or,
    Implies,
    Iff,
    KAtom,
    PhiAtom,
    StarAtom,
    EqAtom
  };
  using Ptr = std::shared_ptr<const PBody>;

  static Ptr constant(bool value);
  static Ptr quantifier(Kind k, int var, Ptr body);
  static Ptr negation(Ptr f);
  static Ptr binary(Kind k, Ptr lhs, Ptr rhs);
  static Ptr k_atom(int var);
  static Ptr phi_atom(int index, int var);   // index 1-based
  static Ptr star_atom(int mu_index, int var);  // index into Postulate::mus
  static Ptr eq_atom(int var, int var2);

  Kind kind() const { return kind_; }
  int var() const { return var_; }
  int var2() const { return var2_; }
  int index() const { return index_; }
  const Ptr& lhs() const { return lhs_; }
  const Ptr& rhs() const { return rhs_; }

 private:
  PBody(Kind k, int var, int var2, int index, Ptr lhs, Ptr rhs)
      : kind_(k), var_(var), var2_(var2), index_(index), lhs_(std::move(lhs)),
        rhs_(std::move(rhs)) {}

  Kind kind_;
  int var_, var2_, index_;
  Ptr lhs_, rhs_;
};

/// A postulate: ell formula symbols p1..p_ell, the deduplicated list of
/// starred boolean combinations (propositional formulas over p-variables),
/// and the sentence body. Variable ids index var_names.
struct Postulate {
  int ell = 0;
  std::vector<Formula::Ptr> mus;
  std::vector<std::string> var_names;
  PBody::Ptr body;

  int mu_count() const { return int(mus.size()); }
};

/// Parses the postulate DSL: quantifiers `forall v.` / `exists v.` whose
/// scope extends maximally to the right, atoms `K(v)`, `p1(v)..p9(v)`,
/// `Kstar[<mu>](v)`, `v = w`, connectives as in the formula DSL. `<mu>` is a
/// formula over p1..p9; starred arguments may not mention K or Kstar.
/// The body must be a sentence: a free variable is a parse error.
Postulate parse_postulate(std::string_view text);

/// Built-in postulates by name; throws Error for unknown names.
///   agm-success        (exists x. p1(x)) -> (exists x. Kstar[p1](x))
///   agm-success-k      (exists x. K(x)) -> (exists x. Kstar[p1](x))
///   agm-subexpansion   (exists x. Kstar[p1](x) & p2(x)) ->
///                        (forall y. Kstar[p1 & p2](y) -> Kstar[p1](y) & p2(y))
/// agm-success conditions on the revising formula: minimization returns the
/// empty set on an unsatisfiable input, so the K-conditioned variant
/// (agm-success-k) is falsified by every minimization operator at |p1| = 0.
Postulate builtin_postulate(std::string_view name);
const std::vector<std::string>& builtin_postulate_names();

/// Renders back to DSL text (minimal parentheses, macro names intact).
std::string to_string(const Postulate& p);

/// Model sets of a starred combination under concrete phi interpretations.
ModelSet models_under(const Formula& mu, const std::vector<ModelSet>& phis);

/// Structural well-formedness for hand-built postulates (parser output always
/// passes): every atom variable is quantifier-bound on its path, no id is
/// rebound, ids index var_names, p/Kstar indices are in range, and each mu
/// only mentions p1..p_ell. Throws ValidationError otherwise. Evaluation and
/// translation call this; it is exposed for early input checking.
void validate_postulate(const Postulate& p);

/// Evaluates the body for one concrete tuple of revising sets: variables
/// range over assignments, K(x) and p_i(x) are memberships, Kstar[mu](x) is
/// membership in op(models_under(mu, phis)).
bool eval_instance(const RevisionOperator& op, const ModelSet& k, const Postulate& p,
                   const std::vector<ModelSet>& phis);

struct SatisfiesOptions {
  bool exhaustive = true;
  int samples = 0;         // sampled mode
  std::uint64_t seed = 0;  // sampled mode
  int jobs = 1;            // exhaustive scan parallelism; output is job-count independent
};

struct SatisfactionVerdict {
  bool holds = false;
  /// Lexicographically first counterexample tuple (A_1 major) in exhaustive
  /// mode; first failing draw in sampled mode.
  std::optional<std::vector<ModelSet>> counterexample;
  std::uint64_t tuples_checked = 0;
};

/// The implicit universal quantification over p1..p_ell: exhaustive mode
/// scans all (2^(2^n))^ell tuples (capped at 2^24; CapError beyond, sampling
/// suggested), sampled mode draws `samples` seeded tuples.
SatisfactionVerdict satisfies(const RevisionOperator& op, const ModelSet& k, const Postulate& p,
                              const SatisfiesOptions& opts = {});

}  // namespace minrev
