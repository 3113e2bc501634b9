#include "freqcond/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace freqcond {

int thread_cap() {
  if (const char* env = std::getenv("FREQCOND_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_ranges(
    std::uint64_t count,
    const std::function<void(std::uint64_t, std::uint64_t, int)>& fn) {
  if (count == 0) return;
  const int workers = static_cast<int>(std::min<std::uint64_t>(
      static_cast<std::uint64_t>(thread_cap()), count));
  if (workers <= 1) {
    fn(0, count, 0);
    return;
  }
  const std::uint64_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t begin = chunk * static_cast<std::uint64_t>(w);
    const std::uint64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end, w] {
      try {
        fn(begin, end, w);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace freqcond
