#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "minrev/order.hpp"
#include "minrev/postulate.hpp"
#include "minrev/revision.hpp"

namespace minrev {

/// First-order formula over the signature {<=, =, A_1..A_9}. The min macros
/// are expanded away at construction time, so evaluation never sees them.
class FONode {
 public:
  enum class Kind { True, False, Forall, Exists, Not, And, Or, Implies, Iff, Leq, Eq, AAtom };
  using Ptr = std::shared_ptr<const FONode>;

  static Ptr constant(bool value);
  static Ptr quantifier(Kind k, int var, Ptr body);
  static Ptr negation(Ptr f);
  static Ptr binary(Kind k, Ptr lhs, Ptr rhs);
  static Ptr leq(int var, int var2);      // var <= var2
  static Ptr eq(int var, int var2);
  static Ptr a_atom(int index, int var);  // index 1-based

  Kind kind() const { return kind_; }
  int var() const { return var_; }
  int var2() const { return var2_; }
  int index() const { return index_; }
  const Ptr& lhs() const { return lhs_; }
  const Ptr& rhs() const { return rhs_; }

 private:
  FONode(Kind k, int var, int var2, int index, Ptr lhs, Ptr rhs)
      : kind_(k), var_(var), var2_(var2), index_(index), lhs_(std::move(lhs)),
        rhs_(std::move(rhs)) {}

  Kind kind_;
  int var_, var2_, index_;
  Ptr lhs_, rhs_;
};

/// A first-order sentence; ell is the number of set symbols it may mention.
struct FOSentence {
  int ell = 0;
  std::vector<std::string> var_names;
  FONode::Ptr body;
};

/// forallsets A1..Al. body
struct UMSOSentence {
  int ell = 0;
  FOSentence body;
};

/// A preorder with ell interpreted subsets, the target of FO evaluation.
struct ExtendedStructure {
  PartialPreorder order;
  std::vector<DynBitset> a_sets;
};

/// Postulate-to-FO translation: K(x) becomes minimality, p_i(x) becomes
/// A_i(x), Kstar[mu](x) becomes minimality within the hatted mu. Strictness
/// y < x is expanded to y <= x & !(x <= y); every min introduces one fresh
/// universally quantified variable (v1, v2, ... skipping names the postulate
/// already uses).
FOSentence translate(const Postulate& p);

/// Parses the FO DSL: atoms `u <= v`, `u < v` (strictness sugar), `u = v`,
/// `Ai(v)`, macros `min(v)` and `min[<nu>](v)` with `<nu>` a formula over
/// A1..A9; quantifiers and connectives as in the postulate DSL. Macros and
/// strictness are expanded during parsing. Must be a sentence.
FOSentence parse_fo(std::string_view text);

/// Accepts `forallsets A1..Ak. <body>` (also `forallsets A1. <body>` for
/// k = 1); a bare FO sentence is promoted with ell = largest A-index used.
UMSOSentence parse_umso(std::string_view text);

/// Expanded form of min[nu](x) closed under a top-level `forall x.`;
/// pass nu_text = "" for the plain min macro. Exposed for macro tests.
FOSentence min_macro(std::string_view nu_text);

std::string to_string(const FOSentence& s);
std::string to_string(const UMSOSentence& s);

/// Structural equality up to renaming of bound variables.
bool alpha_equal(const FOSentence& a, const FOSentence& b);

/// A_i = preimage of phis[i] under t.
ExtendedStructure extension_of(const FaithfulStructure& f, const std::vector<ModelSet>& phis);

/// Standard FO model checking; <= is the order of s.
bool eval_fo(const ExtendedStructure& s, const FOSentence& psi);

/// The two sides that the translation is meant to keep in lockstep:
/// eval_instance over the operator of f versus eval_fo of the translated
/// sentence on the extension of f. Returns whether they agree (used as a
/// test oracle; expected to always return true).
bool check_prop_equivalence(const FaithfulStructure& f, const RevisionOperator& op,
                            const FOSentence& tau, const Postulate& p,
                            const std::vector<ModelSet>& phis);
bool check_prop_equivalence(const FaithfulStructure& f, const Postulate& p,
                            const std::vector<ModelSet>& phis);

struct UMSOOptions {
  bool exhaustive = true;
  int samples = 0;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct UMSOVerdict {
  bool holds = false;
  /// First falsifying subset tuple in lexicographic bitmask order (A_1
  /// major) when exhaustive; first failing draw when sampled.
  std::optional<std::vector<DynBitset>> witness;
  std::uint64_t tuples_checked = 0;
};

/// Universal-MSO evaluation by brute force over all ell-tuples of subsets
/// of elements; exhaustive mode requires (2^m)^ell <= 2^24.
UMSOVerdict eval_umso(const PartialPreorder& r, const UMSOSentence& phi,
                      const UMSOOptions& opts = {});

}  // namespace minrev
