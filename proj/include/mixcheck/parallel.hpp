#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace mixcheck {

// Thread count from MIXCHECK_THREADS, else hardware concurrency.
inline unsigned default_thread_count() {
  if (const char* env = std::getenv("MIXCHECK_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count) over `threads` workers in contiguous
// blocks. Each index must write only its own output slot; results are then
// independent of the thread count. If bodies throw, the exception of the
// lowest failing index is rethrown after all workers join.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (count == 0) return;
  if (count < threads) threads = static_cast<unsigned>(count);
  threads = std::max(1u, threads);
  std::vector<std::exception_ptr> errors(threads);
  auto run_block = [&](unsigned t) {
    const std::size_t begin = count * t / threads;
    const std::size_t end = count * (t + 1) / threads;
    for (std::size_t i = begin; i < end; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[t] = std::current_exception();
        return;
      }
    }
  };
  if (threads == 1) {
    run_block(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run_block, t);
    for (auto& th : pool) th.join();
  }
  // Blocks are ordered, so the first failing block holds the lowest index.
  for (unsigned t = 0; t < threads; ++t)
    if (errors[t]) std::rethrow_exception(errors[t]);
}

}  // namespace mixcheck
