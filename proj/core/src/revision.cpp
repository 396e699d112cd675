#include "minrev/revision.hpp"

#include <random>

namespace minrev {

namespace {

int var_count_for_size(int m) {
  int n = 0;
  while ((1 << n) < m) ++n;
  if ((1 << n) != m) throw ValidationError("element count " + std::to_string(m) +
                                           " is not a power of 2");
  return n;
}

void require_bijection(const std::vector<std::uint32_t>& t, int n) {
  const std::uint32_t m = std::uint32_t(1) << n;
  if (t.size() != m)
    throw ValidationError("t has " + std::to_string(t.size()) + " entries, expected " +
                          std::to_string(m));
  std::vector<bool> seen(m, false);
  for (auto a : t) {
    if (a >= m) throw ValidationError("t maps to out-of-range assignment " + std::to_string(a));
    if (seen[a]) throw ValidationError("t is not injective at assignment " + std::to_string(a));
    seen[a] = true;
  }
}

}  // namespace

std::vector<int> FaithfulStructure::t_inverse() const {
  std::vector<int> inv(t.size(), -1);
  for (std::size_t e = 0; e < t.size(); ++e) inv[t[e]] = int(e);
  return inv;
}

FaithfulnessCheck check_faithful(const PartialPreorder& r, const std::vector<std::uint32_t>& t,
                                 const ModelSet& k) {
  const int n = k.var_count();
  if (r.size() != (1 << n))
    throw ValidationError("preorder size " + std::to_string(r.size()) +
                          " does not match 2^n = " + std::to_string(1 << n));
  require_bijection(t, n);

  DynBitset mins = minimal_elements(r);
  for (int a = 0; a < r.size(); ++a) {
    bool is_min = mins.test(a);
    bool in_k = k.contains(t[a]);
    if (is_min && !in_k)
      return {false, "minimal element " + std::to_string(a) + " maps to assignment " +
                         std::to_string(t[a]) + " outside K"};
    if (!is_min && in_k)
      return {false, "non-minimal element " + std::to_string(a) + " maps to K-model " +
                         std::to_string(t[a])};
  }
  for (int a = 0; a < r.size(); ++a) {
    if (!k.contains(t[a])) continue;
    for (int b = 0; b < r.size(); ++b)
      if (!k.contains(t[b]) && !strict_less(r, a, b))
        return {false, "K-model element " + std::to_string(a) +
                           " is not strictly below non-model element " + std::to_string(b)};
  }
  return {true, ""};
}

FaithfulStructure make_faithful(PartialPreorder r, std::vector<std::uint32_t> t, ModelSet k) {
  if (auto chk = check_faithful(r, t, k); !chk.ok)
    throw ValidationError("structure is not faithful: " + chk.violation);
  return {std::move(r), std::move(t), std::move(k)};
}

ModelSet knowledge_base_of(const PartialPreorder& r, const std::vector<std::uint32_t>& t) {
  if (!is_regular(r)) throw ValidationError("knowledge_base_of requires a regular preorder");
  const int n = var_count_for_size(r.size());
  require_bijection(t, n);
  ModelSet k(n);
  for (int a : minimal_elements(r).elements()) k.insert(t[a]);
  return k;
}

FaithfulStructure faithful_from_regular(PartialPreorder r, std::vector<std::uint32_t> t) {
  ModelSet k = knowledge_base_of(r, t);
  return {std::move(r), std::move(t), std::move(k)};
}

ModelSet revise(const FaithfulStructure& f, const ModelSet& phi) {
  const int n = f.var_count();
  if (phi.var_count() != n)
    throw Error("revising formula is over " + std::to_string(phi.var_count()) +
                " variables, structure over " + std::to_string(n));
  DynBitset preimage(f.order.size());
  for (int a = 0; a < f.order.size(); ++a)
    if (phi.contains(f.t[a])) preimage.set(a);
  ModelSet out(n);
  for (int a : minimal_elements(f.order, preimage).elements()) out.insert(f.t[a]);
  return out;
}

RevisionOperator RevisionOperator::materialize(const FaithfulStructure& f) {
  const int n = f.var_count();
  if (n > 4)
    throw CapError("operator tables are materialized only up to n = 4 (2^(2^n) entries); use a "
                   "computed view");
  RevisionOperator op;
  op.n_ = n;
  const std::uint32_t subsets = std::uint32_t(1) << (1 << n);
  op.table_.resize(subsets);
  // One pass in element space: preimage of the mask, minimize, map back.
  std::vector<int> inv = f.t_inverse();
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    DynBitset preimage(f.order.size());
    for (int v = 0; v < (1 << n); ++v)
      if ((mask >> v) & 1u) preimage.set(inv[v]);
    std::uint32_t result = 0;
    for (int a : minimal_elements(f.order, preimage).elements())
      result |= std::uint32_t(1) << f.t[a];
    op.table_[mask] = result;
  }
  return op;
}

RevisionOperator RevisionOperator::view(FaithfulStructure f) {
  RevisionOperator op;
  op.n_ = f.var_count();
  op.backing_ = std::move(f);
  return op;
}

RevisionOperator RevisionOperator::from_table(int n, std::vector<std::uint32_t> table) {
  if (n < 0 || n > 4) throw CapError("explicit tables are supported up to n = 4");
  const std::size_t subsets = std::size_t(1) << (1 << n);
  if (table.size() != subsets)
    throw ValidationError("table has " + std::to_string(table.size()) + " entries, expected " +
                          std::to_string(subsets));
  const std::uint32_t universe = std::uint32_t((std::uint64_t(1) << (1 << n)) - 1);
  for (auto entry : table)
    if (entry & ~universe) throw ValidationError("table entry mentions out-of-range assignments");
  RevisionOperator op;
  op.n_ = n;
  op.table_ = std::move(table);
  return op;
}

ModelSet RevisionOperator::apply(const ModelSet& phi) const {
  if (phi.var_count() != n_)
    throw Error("operator is over " + std::to_string(n_) + " variables, argument over " +
                std::to_string(phi.var_count()));
  if (materialized()) return ModelSet::from_mask(n_, table_[phi.mask()]);
  return revise(*backing_, phi);
}

std::uint32_t RevisionOperator::apply_mask(std::uint32_t phi_mask) const {
  if (!materialized()) throw Error("apply_mask requires a materialized table");
  return table_[phi_mask];
}

const std::vector<std::uint32_t>& RevisionOperator::table() const {
  if (!materialized()) throw Error("operator is a computed view; no table to expose");
  return table_;
}

bool RevisionOperator::operator==(const RevisionOperator& o) const {
  if (!materialized() || !o.materialized())
    throw Error("extensional comparison requires materialized tables");
  return n_ == o.n_ && table_ == o.table_;
}

RevisionOperator operator_table(const FaithfulStructure& f) {
  return RevisionOperator::materialize(f);
}

namespace {

std::uint32_t min_mask_of(const PartialPreorder& r, std::uint32_t subset_mask) {
  DynBitset subset = DynBitset::from_mask(r.size(), subset_mask);
  std::uint32_t out = 0;
  for (int a : minimal_elements(r, subset).elements()) out |= std::uint32_t(1) << a;
  return out;
}

}  // namespace

PartialPreorder reconstruct_order(const RevisionOperator& op, ReconstructOptions opts) {
  const int n = op.var_count();
  const int m = 1 << n;

  auto value = [&](std::uint32_t mask) -> std::uint32_t {
    if (op.materialized()) return op.apply_mask(mask);
    if (m > 32) throw CapError("reconstruction over a computed view is capped at n = 5");
    std::uint32_t out = 0;
    for (auto a : op.apply(ModelSet::from_mask(n, mask)).members()) out |= std::uint32_t(1) << a;
    return out;
  };

  for (int u = 0; u < m; ++u) {
    std::uint32_t s = value(std::uint32_t(1) << u);
    if (s != std::uint32_t(1) << u)
      throw ReconstructError("operator does not fix the singleton {" + std::to_string(u) +
                             "}; not a minimization");
  }

  std::vector<DynBitset> rows(m, DynBitset(m));
  for (int u = 0; u < m; ++u) rows[u].set(u);
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) {
      const std::uint32_t pair = (std::uint32_t(1) << u) | (std::uint32_t(1) << v);
      const std::uint32_t s = value(pair);
      if (s == (std::uint32_t(1) << u))
        rows[u].set(v);
      else if (s == (std::uint32_t(1) << v))
        rows[v].set(u);
      else if (s != pair)
        throw ReconstructError("pairwise data inconsistent at {" + std::to_string(u) + ", " +
                               std::to_string(v) + "}: operator returned a set outside the pair");
    }

  PartialPreorder r;
  try {
    r = validate_preorder(rows);
  } catch (const ValidationError& e) {
    throw ReconstructError(std::string("reconstructed relation is not a preorder: ") + e.what());
  }

  auto verify_mask = [&](std::uint32_t mask) {
    if (min_mask_of(r, mask) != value(mask))
      throw ReconstructError("operator is not minimization over the reconstructed order "
                             "(mismatch at subset mask " +
                             std::to_string(mask) + ")");
  };

  switch (opts.mode) {
    case VerifyMode::Pairs:
      break;
    case VerifyMode::Full: {
      if (n > 4) throw CapError("full-table verification is capped at n = 4; use Sample");
      const std::uint64_t subsets = std::uint64_t(1) << m;
      for (std::uint64_t mask = 0; mask < subsets; ++mask) verify_mask(std::uint32_t(mask));
      break;
    }
    case VerifyMode::Sample: {
      if (m > 32) throw CapError("sampled verification is capped at n = 5");
      std::mt19937_64 rng(opts.seed);
      const std::uint32_t universe = std::uint32_t((std::uint64_t(1) << m) - 1);
      for (int i = 0; i < opts.samples; ++i)
        verify_mask(std::uint32_t(rng()) & universe);
      break;
    }
  }
  return r;
}

std::optional<FaithfulStructure> is_representable(const RevisionOperator& op,
                                                  const FamilyOracle& family,
                                                  ReconstructOptions opts) {
  PartialPreorder r;
  try {
    r = reconstruct_order(op, opts);
  } catch (const ReconstructError&) {
    return std::nullopt;
  }
  const int n = op.var_count();
  std::vector<std::uint32_t> identity(std::size_t(1) << n);
  for (std::size_t a = 0; a < identity.size(); ++a) identity[a] = std::uint32_t(a);
  ModelSet k = op.apply(ModelSet::all(n));
  if (!check_faithful(r, identity, k).ok) return std::nullopt;
  if (!family(r)) return std::nullopt;
  return FaithfulStructure{std::move(r), std::move(identity), std::move(k)};
}

}  // namespace minrev
