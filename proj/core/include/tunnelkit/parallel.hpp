#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

#include "tunnelkit/bigreal.hpp"

namespace tunnelkit {

// Runs fn(0..n-1) on up to `threads` workers and returns the results in
// index order. Workers inherit the caller's working precision. If tasks
// throw, the exception of the lowest failing index is rethrown.
template <class F>
auto parallel_map(std::size_t n, int threads, F&& fn) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const int digits = working_digits();
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    PrecisionScope scope(digits);
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  std::size_t workers = threads < 1 ? 1 : static_cast<std::size_t>(threads);
  if (workers > n) workers = n;
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < n; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace tunnelkit
