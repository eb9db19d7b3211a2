// Thread budget and a deterministic column-parallel loop.
//
// STARFRAME_THREADS caps the number of worker threads (0 = sequential).
// Work items write to disjoint output slots, so results are bitwise
// independent of the schedule.
#pragma once

#include <atomic>
#include <complex>
#include <cstdlib>
#include <thread>
#include <vector>

namespace starframe {

/// Number of worker threads to use. Reads STARFRAME_THREADS once.
inline int thread_budget() {
  static const int budget = [] {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("STARFRAME_THREADS")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v >= 0) return v == 0 ? 1 : static_cast<int>(std::min<long>(v, hw));
    }
    return static_cast<int>(hw);
  }();
  return budget;
}

/// Runs fn(i) for i in [0, count). Parallel when the budget allows; the
/// assignment of i to threads never affects the result.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const int workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto run = [&] {
    for (;;) {
      int i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

/// Like parallel_for, but hands each worker a private reusable scratch
/// buffer: fn(i, scratch). Scratch contents never cross work items.
template <typename Fn>
void parallel_for_scratch(int count, Fn&& fn) {
  using Scratch = std::vector<std::complex<double>>;
  const int workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    Scratch scratch;
    for (int i = 0; i < count; ++i) fn(i, scratch);
    return;
  }
  std::atomic<int> next{0};
  auto run = [&] {
    Scratch scratch;
    for (;;) {
      int i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      fn(i, scratch);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

}  // namespace starframe
