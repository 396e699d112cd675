#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace minrev::detail {

/// Smallest index in [0, total) where pred holds, or nullopt. With jobs > 1
/// the range is split into contiguous blocks scanned concurrently; a block
/// whose start exceeds an already-found hit is abandoned, so the result is
/// the true minimum regardless of scheduling. pred must be thread-safe.
inline std::optional<std::uint64_t> parallel_first(
    std::uint64_t total, int jobs, const std::function<bool(std::uint64_t)>& pred) {
  if (total == 0) return std::nullopt;
  if (jobs <= 1 || total < 1024) {
    for (std::uint64_t i = 0; i < total; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  const std::uint64_t n_blocks = std::uint64_t(jobs);
  const std::uint64_t chunk = (total + n_blocks - 1) / n_blocks;
  std::atomic<std::uint64_t> best(UINT64_MAX);
  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (std::uint64_t b = 0; b < n_blocks; ++b) {
    const std::uint64_t lo = b * chunk;
    const std::uint64_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, lo, hi] {
      for (std::uint64_t i = lo; i < hi; ++i) {
        if (best.load(std::memory_order_relaxed) < lo) return;
        if (pred(i)) {
          std::uint64_t cur = best.load(std::memory_order_relaxed);
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  const std::uint64_t found = best.load();
  if (found == UINT64_MAX) return std::nullopt;
  return found;
}

}  // namespace minrev::detail
