#pragma once

// Index-parallel loops with deterministic results: work items are claimed
// dynamically, but every item writes only its own output slot, so merged
// results never depend on the worker count or schedule.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ergo {

// ERGO_THREADS if set to a positive integer, otherwise 1.
inline std::size_t default_thread_count() {
  if (const char* env = std::getenv("ERGO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(std::min(v, 256L));
  }
  return 1;
}

// Calls body(i) for i in [0, count) on up to `threads` workers.  Every item
// runs even if another throws; the exception of the lowest failing index is
// rethrown, which is the same one a serial loop would report first.
template <typename Body>
void parallel_for(std::size_t count, std::size_t threads, Body&& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    std::exception_ptr first;
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        if (!first) first = std::current_exception();
      }
    }
    if (first) std::rethrow_exception(first);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr error;
  std::size_t error_index = count;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// Maps [0, count) to a vector of results in index order.
template <typename Result, typename Body>
std::vector<Result> parallel_map(std::size_t count, std::size_t threads, Body&& body) {
  std::vector<Result> out(count);
  parallel_for(count, threads, [&](std::size_t i) { out[i] = body(i); });
  return out;
}

}  // namespace ergo
