#include "erpic/threads.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace erpic {

int thread_count() {
  static const int cached = [] {
    const char* env = std::getenv("ERPIC_THREADS");
    if (env == nullptr) return 1;
    try {
      int n = std::stoi(env);
      return n < 1 ? 1 : n;
    } catch (...) {
      return 1;
    }
  }();
  return cached;
}

void parallel_chunks(std::size_t n, int workers,
                     const std::function<void(int, std::size_t, std::size_t)>& fn) {
  if (workers <= 1 || n < 2 * static_cast<std::size_t>(workers)) {
    fn(0, 0, n);
    return;
  }
  const std::size_t per = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    const std::size_t begin = per * static_cast<std::size_t>(t);
    const std::size_t end = std::min(n, begin + per);
    if (begin >= end) break;
    pool.emplace_back([&fn, t, begin, end] { fn(t, begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace erpic
