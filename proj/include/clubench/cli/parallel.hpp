#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace clubench::cli {

/// Calls fn(i) for i in [0, count) on up to `workers` threads. Items are
/// claimed dynamically, so fn must not depend on which thread runs it.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  const auto n_threads = static_cast<std::size_t>(workers < 1 ? 1 : workers);
  if (n_threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n_threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(n_threads, count); ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace clubench::cli
