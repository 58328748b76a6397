#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace modlab {

/// Worker cap: MODULUS_LAB_WORKERS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
[[nodiscard]] int worker_count();

/// Applies `fn` to 0..count-1 on up to worker_count() threads. Results come
/// back in index order; the first exception (by index) is rethrown.
template <class T>
[[nodiscard]] std::vector<T> parallel_map(std::size_t count,
                                          const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  const auto workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(worker_count()));
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace modlab
