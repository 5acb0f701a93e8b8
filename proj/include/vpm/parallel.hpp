#pragma once

#include <atomic>
#include <chrono>

#include "vpm/errors.hpp"

namespace vpm {

struct SolveOptions {
  bool parallel = true;
  double timeout_seconds = 0;  // 0 = unlimited
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void check_deadline() const {
    if (timeout_seconds <= 0) return;
    const auto elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > timeout_seconds) throw TimeoutError("solve exceeded the time limit");
  }
};

inline constexpr long long kNotFound = -1;

struct ScanResult {
  long long index = kNotFound;  // lowest accepted index
  long long evaluated = 0;      // pred invocations
};

// Lowest index in [0, total) accepted by pred. pred must be pure: with
// OpenMP the block runs concurrently and the lowest accepted index wins the
// race. pred must not throw inside the parallel region.
template <typename Pred>
ScanResult scan_first(long long total, const SolveOptions& opt, Pred&& pred) {
  ScanResult result;
  if (total <= 0) return result;
#ifdef _OPENMP
  if (opt.parallel && total > 1) {
    std::atomic<long long> best{total};
    long long evaluated = 0;
    constexpr long long kBlock = 8192;
    for (long long lo = 0; lo < total; lo += kBlock) {
      opt.check_deadline();
      const long long hi = std::min(total, lo + kBlock);
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : evaluated)
      for (long long i = lo; i < hi; ++i) {
        if (i >= best.load(std::memory_order_relaxed)) continue;
        ++evaluated;
        if (pred(i)) {
          long long cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
      // best only ever shrinks, so every index below it was evaluated.
      if (best.load() < total) break;
    }
    result.evaluated = evaluated;
    if (best.load() < total) result.index = best.load();
    return result;
  }
#endif
  for (long long i = 0; i < total; ++i) {
    if ((i & 1023) == 0) opt.check_deadline();
    ++result.evaluated;
    if (pred(i)) {
      result.index = i;
      return result;
    }
  }
  return result;
}

template <typename Pred>
long long find_first(long long total, const SolveOptions& opt, Pred&& pred) {
  return scan_first(total, opt, std::forward<Pred>(pred)).index;
}

}  // namespace vpm
