#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "minrev/logic.hpp"
#include "minrev/order.hpp"

namespace minrev {

/// Outcome of a faithfulness check; `violation` names the offending element
/// or pair when the check fails.
struct FaithfulnessCheck {
  bool ok = false;
  std::string violation;

  explicit operator bool() const { return ok; }
};

/// A preorder over 2^n elements together with a bijection t from elements to
/// truth assignments and the knowledge base the structure is faithful for:
/// an element is minimal exactly when its assignment satisfies K, and
/// K-model elements sit strictly below all non-model elements.
struct FaithfulStructure {
  PartialPreorder order;
  std::vector<std::uint32_t> t;  // element -> assignment bits
  ModelSet k;

  int var_count() const { return k.var_count(); }
  /// assignment bits -> element.
  std::vector<int> t_inverse() const;
};

/// Verifies both faithfulness conditions; never throws on a mere violation.
/// Throws on malformed input (size mismatch, t not bijective).
FaithfulnessCheck check_faithful(const PartialPreorder& r, const std::vector<std::uint32_t>& t,
                                 const ModelSet& k);

/// check_faithful that throws ValidationError on violation.
FaithfulStructure make_faithful(PartialPreorder r, std::vector<std::uint32_t> t, ModelSet k);

/// K = images of the minimal elements. Requires is_regular(r); regularity
/// makes the resulting structure faithful by construction.
ModelSet knowledge_base_of(const PartialPreorder& r, const std::vector<std::uint32_t>& t);

/// Bundles knowledge_base_of into a ready structure.
FaithfulStructure faithful_from_regular(PartialPreorder r, std::vector<std::uint32_t> t);

/// Minimization revision: the image under t of the minimal elements of the
/// preimage of phi. Empty phi yields the empty set.
ModelSet revise(const FaithfulStructure& f, const ModelSet& phi);

/// A total map from model sets to model sets. Either a materialized table
/// (2^(2^n) entries, n <= 4) or a computed view backed by a faithful
/// structure. Tables loaded from external data may be arbitrary maps; only
/// minimization-produced operators are guaranteed to satisfy op(A) subset A.
class RevisionOperator {
 public:
  static RevisionOperator materialize(const FaithfulStructure& f);
  static RevisionOperator view(FaithfulStructure f);
  static RevisionOperator from_table(int n, std::vector<std::uint32_t> table);

  int var_count() const { return n_; }
  bool materialized() const { return !table_.empty(); }

  ModelSet apply(const ModelSet& phi) const;
  /// Fast path over bit masks; requires a materialized table.
  std::uint32_t apply_mask(std::uint32_t phi_mask) const;

  const std::vector<std::uint32_t>& table() const;

  /// Extensional equality (equal tables); both sides must be materialized.
  bool operator==(const RevisionOperator& o) const;

 private:
  RevisionOperator() = default;
  int n_ = 0;
  std::vector<std::uint32_t> table_;            // indexed by phi mask when materialized
  std::optional<FaithfulStructure> backing_;    // when a view
};

/// operator_table(F): the materialized operator. Throws CapError beyond
/// n = 4 (use RevisionOperator::view there).
RevisionOperator operator_table(const FaithfulStructure& f);

enum class VerifyMode { Pairs, Full, Sample };

struct ReconstructOptions {
  VerifyMode mode = VerifyMode::Full;
  int samples = 0;           // Sample mode
  std::uint64_t seed = 0;    // Sample mode
};

/// Rebuilds the partial order behind a minimization operator from its values
/// on pairs: u < v iff op({u,v}) = {u}; incomparable iff op({u,v}) = {u,v}.
/// Elements are identified with assignments (t = identity). Pairwise data
/// only determines partial orders: a preorder tie is indistinguishable from
/// incomparability here, and minimization over a preorder coincides with
/// minimization over the partial order that breaks its ties this way.
/// VerifyMode::Full re-tabulates every subset against op (n <= 4);
/// Sample checks `samples` seeded random subsets (n <= 6); Pairs skips.
/// Throws ReconstructError when the pairwise data is inconsistent, the
/// relation fails transitivity, or verification finds a mismatch.
PartialPreorder reconstruct_order(const RevisionOperator& op, ReconstructOptions opts = {});

using FamilyOracle = std::function<bool(const PartialPreorder&)>;

/// Reconstructs, wraps into a faithful structure over t = identity with
/// K = op(everything), and accepts iff the family oracle holds for the
/// reconstructed order. Partial-order uniqueness of reconstruction makes the
/// single candidate decisive. Returns nothing when reconstruction fails,
/// faithfulness fails, or the family rejects.
std::optional<FaithfulStructure> is_representable(const RevisionOperator& op,
                                                  const FamilyOracle& family,
                                                  ReconstructOptions opts = {});

}  // namespace minrev
