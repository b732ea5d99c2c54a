#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace abstube::detail {

/// Splits [0, count) into `workers` contiguous chunks and runs
/// fn(begin, end) on each, one thread per chunk.  The first exception thrown
/// by any chunk (in chunk order) is rethrown after all threads join.
inline void parallel_chunks(std::size_t count, unsigned workers,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t w = std::clamp<std::size_t>(workers, 1, count);
  if (w == 1) {
    fn(0, count);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (std::size_t c = 0; c < w; ++c) {
    const std::size_t begin = count * c / w;
    const std::size_t end = count * (c + 1) / w;
    threads.emplace_back([&, c, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace abstube::detail
