#include "mms/core.hpp"

#include <atomic>
#include <mutex>
#include <thread>

namespace mms {

std::string Fnv1a::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  std::uint64_t v = state_;
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

namespace {
int g_threads = 0;
}

void set_thread_count(int n) { g_threads = n < 0 ? 0 : n; }

int thread_count() {
  if (g_threads > 0) return g_threads;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(int begin, int end, const std::function<void(int)>& f) {
  const int n = end - begin;
  if (n <= 0) return;
  const int workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (int i = begin; i < end; ++i) f(i);
    return;
  }
  std::atomic<int> next(begin);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<bool> failed(false);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= end || failed.load(std::memory_order_relaxed)) break;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          break;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace mms
