#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace macropeaks {

// Thread count: explicit argument, else MACROPEAKS_THREADS, else hardware.
inline unsigned resolve_threads(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MACROPEAKS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Evaluates fn(i) for i in [0, count) across threads; results land in an
// index-addressed vector, so the reduction order never depends on the thread
// count (replicate streams stay reproducible).
inline std::vector<double> parallel_map(std::size_t count,
                                        const std::function<double(std::size_t)>& fn,
                                        unsigned threads = 0) {
  std::vector<double> results(count);
  const unsigned workers =
      std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < count; i += workers) results[i] = fn(i);
    });
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace macropeaks
