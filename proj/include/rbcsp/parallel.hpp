#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace rbcsp {

/// Number of chunks parallel_chunks() uses for `count` items.
inline std::uint64_t chunk_count(std::uint64_t count, unsigned workers) {
  return std::max<std::uint64_t>(1, std::min<std::uint64_t>(std::max(1u, workers), count));
}

/// Splits [0, count) into chunk_count() contiguous chunks and runs
/// fn(chunk, begin, end) on each, rethrowing the first exception. Callers
/// write results into per-chunk slots so the outcome is schedule-independent.
template <typename Fn>
void parallel_chunks(std::uint64_t count, unsigned workers, Fn&& fn) {
  const std::uint64_t chunks = chunk_count(count, workers);
  if (chunks == 1) {
    fn(std::uint64_t{0}, std::uint64_t{0}, count);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(chunks);
  threads.reserve(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = count * c / chunks;
    const std::uint64_t end = count * (c + 1) / chunks;
    threads.emplace_back([&, c, begin, end] {
      try {
        fn(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace rbcsp
