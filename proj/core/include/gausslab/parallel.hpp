#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gausslab {

// Worker count handed down from the CLI.  Numerical results never depend on it:
// work is cut into fixed shards and partial sums are combined exactly.
struct Parallelism {
  unsigned threads = 1;

  static Parallelism hardware() {
    unsigned n = std::thread::hardware_concurrency();
    return Parallelism{n == 0 ? 1u : n};
  }
};

// Runs fn(shard) for shard in [0, shards).  Shards are claimed dynamically;
// callers store per-shard results and reduce them afterwards.
template <class Fn>
void for_each_shard(std::size_t shards, const Parallelism& par, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(par.threads == 0 ? 1 : par.threads, shards));
  if (workers <= 1) {
    for (std::size_t s = 0; s < shards; ++s) fn(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      std::size_t s = next.fetch_add(1);
      if (s >= shards) return;
      try {
        fn(s);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(shards);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace gausslab
