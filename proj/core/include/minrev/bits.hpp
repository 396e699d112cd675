#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace minrev {

/// Fixed-size bit vector. Backs model sets, element subsets and color
/// predicates. All sizes in this codebase are small (at most 2^16 bits).
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(int size, bool fill = false)
      : n_(size), w_((size + 63) / 64, fill ? ~0ull : 0ull) {
    assert(size >= 0);
    trim();
  }

  static DynBitset from_mask(int size, std::uint64_t mask) {
    assert(size <= 64);
    DynBitset b(size);
    if (size > 0) b.w_[0] = mask & b.tail_mask(size);
    return b;
  }

  int size() const { return n_; }

  bool test(int i) const {
    assert(i >= 0 && i < n_);
    return (w_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(int i, bool v = true) {
    assert(i >= 0 && i < n_);
    if (v)
      w_[i >> 6] |= 1ull << (i & 63);
    else
      w_[i >> 6] &= ~(1ull << (i & 63));
  }
  void reset(int i) { set(i, false); }

  int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  DynBitset& operator&=(const DynBitset& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  DynBitset& operator|=(const DynBitset& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  DynBitset& operator^=(const DynBitset& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
  friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }
  friend DynBitset operator^(DynBitset a, const DynBitset& b) { return a ^= b; }

  /// Removes every bit set in `o` (set difference, no temporary).
  DynBitset& and_not(const DynBitset& o) {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  DynBitset complement() const {
    DynBitset r(*this);
    for (auto& w : r.w_) w = ~w;
    r.trim();
    return r;
  }

  bool is_subset_of(const DynBitset& o) const {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const DynBitset& o) const {
    assert(n_ == o.n_);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  /// First set bit, or -1.
  int find_first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return int(i * 64 + std::countr_zero(w_[i]));
    return -1;
  }
  /// First set bit strictly after `prev`, or -1.
  int find_next(int prev) const {
    int i = prev + 1;
    if (i >= n_) return -1;
    std::size_t word = std::size_t(i) >> 6;
    std::uint64_t w = w_[word] & (~0ull << (i & 63));
    while (true) {
      if (w) return int(word * 64 + std::countr_zero(w));
      if (++word >= w_.size()) return -1;
      w = w_[word];
    }
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(count());
    for (int v = find_first(); v >= 0; v = find_next(v)) out.push_back(v);
    return out;
  }

  std::uint64_t to_mask() const {
    assert(n_ <= 64);
    return w_.empty() ? 0 : w_[0];
  }

  bool operator==(const DynBitset& o) const = default;

 private:
  static std::uint64_t tail_mask(int size) {
    int r = size & 63;
    return r == 0 ? ~0ull : (~0ull >> (64 - r));
  }
  void trim() {
    if (n_ > 0 && (n_ & 63)) w_.back() &= tail_mask(n_);
    if (n_ == 0) w_.clear();
  }

  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace minrev
