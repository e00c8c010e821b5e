#include "slantlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace slantlab {

int env_thread_cap() {
  const char* raw = std::getenv("SLANTLAB_THREADS");
  if (!raw || !*raw) return 0;
  const long v = std::strtol(raw, nullptr, 10);
  if (v <= 0) return 1;
  return static_cast<int>(v);
}

void parallel_for(long long count, int requested,
                  const std::function<void(long long)>& body) {
  if (count <= 0) return;
  int threads = requested > 0
                    ? requested
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 0) threads = 1;
  const int cap = env_thread_cap();
  if (cap > 0 && threads > cap) threads = cap;
  if (static_cast<long long>(threads) > count)
    threads = static_cast<int>(count);

  if (threads == 1) {
    for (long long i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<long long> next{0};
  std::mutex err_mutex;
  long long err_index = std::numeric_limits<long long>::max();
  std::exception_ptr err;

  auto worker = [&]() {
    for (;;) {
      const long long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace slantlab
