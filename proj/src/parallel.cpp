#include "wildsim/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wildsim {

void parallel_for(uint64_t n, int threads, const std::function<void(uint64_t)>& fn) {
  if (n == 0) return;
  unsigned want = threads > 0 ? static_cast<unsigned>(threads)
                              : std::thread::hardware_concurrency();
  if (want == 0) want = 1;
  if (want > n) want = static_cast<unsigned>(n);

  if (want == 1) {
    for (uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const uint64_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(want);
  for (unsigned k = 0; k < want; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace wildsim
