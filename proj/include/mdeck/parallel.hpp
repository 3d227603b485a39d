#pragma once

// Deterministic work splitting: the chunk grid depends only on the problem
// size, never on the thread count, so per-chunk outputs merge identically no
// matter how many workers ran.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mdeck {

// Thread count resolution: explicit value, else MDECK_THREADS, else hardware.
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MDECK_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(chunk_index, begin, end) over [0, total) split into fixed-size
// chunks; workers pull chunks from a shared counter.
template <class Fn>
void parallel_chunks(std::uint64_t total, std::uint64_t chunk_size, unsigned threads,
                     Fn&& fn) {
  if (total == 0) return;
  if (chunk_size == 0) chunk_size = 1;
  const std::uint64_t chunk_count = (total + chunk_size - 1) / chunk_size;
  if (threads <= 1 || chunk_count == 1) {
    for (std::uint64_t c = 0; c < chunk_count; ++c)
      fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
        if (c >= chunk_count || failed.load(std::memory_order_relaxed)) return;
        fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    }
  };
  std::vector<std::thread> pool;
  const unsigned spawn = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, chunk_count));
  pool.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline std::uint64_t chunk_count_for(std::uint64_t total, std::uint64_t chunk_size) {
  if (total == 0) return 0;
  if (chunk_size == 0) chunk_size = 1;
  return (total + chunk_size - 1) / chunk_size;
}

}  // namespace mdeck
