#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace avlab {

/**
 * Runs f(0), ..., f(count-1) on up to `threads` workers and returns the
 * results indexed by task. Work stealing is by atomic counter, but results
 * land in task order, so the outcome is independent of scheduling. The first
 * task exception (by task index) is rethrown.
 */
template <class T, class F>
std::vector<T> run_tasks(std::size_t count, int threads, F&& f) {
  std::vector<T> out(count);
  if (count == 0) return out;
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> cursor{0};
  auto body = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < count;) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace avlab
