#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "minrev/bits.hpp"
#include "minrev/errors.hpp"

namespace minrev {

inline constexpr int kMaxVariables = 16;

/// A truth assignment over `vars` variables. Bit i-1 of `bits` holds the
/// value of variable x_i, so the least significant bit is x1.
struct Assignment {
  int vars = 0;
  std::uint32_t bits = 0;

  bool value(int var) const { return (bits >> (var - 1)) & 1u; }
  /// Binary rendering, most significant variable first ("10" = x2=1, x1=0).
  std::string to_string() const;
  bool operator==(const Assignment&) const = default;
};

/// Immutable propositional formula AST. Shared subtrees are fine; nodes are
/// never mutated after construction.
class Formula {
 public:
  enum class Kind { True, False, Var, Not, And, Or, Implies, Iff };
  using Ptr = std::shared_ptr<const Formula>;

  static Ptr constant(bool value);
  static Ptr variable(int index);  // 1-based
  static Ptr negation(Ptr f);
  static Ptr conjunction(Ptr lhs, Ptr rhs);
  static Ptr disjunction(Ptr lhs, Ptr rhs);
  static Ptr implication(Ptr lhs, Ptr rhs);
  static Ptr biconditional(Ptr lhs, Ptr rhs);

  Kind kind() const { return kind_; }
  int var_index() const { return var_; }
  const Ptr& lhs() const { return lhs_; }
  const Ptr& rhs() const { return rhs_; }

  /// Largest variable index mentioned (0 for constants).
  int max_var() const;
  bool evaluate(std::uint32_t assignment_bits) const;
  /// DSL rendering with minimal parentheses. `var_prefix` selects the
  /// variable spelling (`x` for assignments, `p` for postulate symbols).
  std::string to_string(char var_prefix = 'x') const;

  static bool equal(const Ptr& a, const Ptr& b);

 private:
  Formula(Kind k, int var, Ptr lhs, Ptr rhs)
      : kind_(k), var_(var), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

  Kind kind_;
  int var_;
  Ptr lhs_, rhs_;
};

/// A set of truth assignments over `n` variables, the semantics |phi| of a
/// formula. Canonically a bit vector of length 2^n.
class ModelSet {
 public:
  ModelSet() = default;
  explicit ModelSet(int n);

  static ModelSet none(int n) { return ModelSet(n); }
  static ModelSet all(int n);
  static ModelSet of(int n, std::initializer_list<std::uint32_t> members);
  /// Bit i of `mask` selects assignment i. Requires n <= 6.
  static ModelSet from_mask(int n, std::uint64_t mask);

  int var_count() const { return n_; }
  int universe_size() const { return 1 << n_; }

  bool contains(std::uint32_t a) const { return members_.test(int(a)); }
  void insert(std::uint32_t a) { members_.set(int(a)); }
  void erase(std::uint32_t a) { members_.reset(int(a)); }

  int count() const { return members_.count(); }
  bool empty() const { return members_.none(); }

  ModelSet& operator&=(const ModelSet& o);
  ModelSet& operator|=(const ModelSet& o);
  friend ModelSet operator&(ModelSet a, const ModelSet& b) { return a &= b; }
  friend ModelSet operator|(ModelSet a, const ModelSet& b) { return a |= b; }
  ModelSet complement() const;
  bool subset_of(const ModelSet& o) const;

  /// Assignments in ascending integer order.
  std::vector<std::uint32_t> members() const;
  std::uint64_t mask() const;  // requires n <= 6
  const DynBitset& raw() const { return members_; }

  std::string to_string() const;  // "{0, 2, 3}"
  bool operator==(const ModelSet&) const = default;

 private:
  int n_ = 0;
  DynBitset members_;
};

/// Parses the formula DSL: variables `x1..x16` (spelling set by
/// `var_prefix`), constants `true`/`false`, operators `!` `&` `|` `->` `<->`
/// in decreasing binding strength, parentheses. Binary operators associate
/// left except `->`, which associates right. Throws ParseError on syntax
/// errors and on variable indices above `n`.
Formula::Ptr parse_formula(std::string_view text, int n, char var_prefix = 'x');

/// Truth-table enumeration of the satisfying assignments.
ModelSet models(const Formula& phi, int n);
inline ModelSet models(const Formula::Ptr& phi, int n) { return models(*phi, n); }

/// Canonical formula with model set A: the full DNF listing one complete
/// minterm per member in ascending assignment order, `false` for the empty
/// set. models(formula_of(A), n) == A.
Formula::Ptr formula_of(const ModelSet& a);

inline bool eval(const Formula& phi, Assignment a) { return phi.evaluate(a.bits); }

}  // namespace minrev
