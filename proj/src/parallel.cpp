#include "sumlogic/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sumlogic {

void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& f) {
  if (jobs > (int)count) jobs = (int)count;
  if (jobs <= 1) {
    for (size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex mu;
  size_t fail_idx = count;
  std::exception_ptr fail;
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < fail_idx) {
          fail_idx = i;
          fail = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) workers.emplace_back(worker);
  for (auto& t : workers) t.join();
  if (fail) std::rethrow_exception(fail);
}

int default_jobs() {
  if (const char* env = std::getenv("SUMLOGIC_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? (int)hc : 1;
}

}  // namespace sumlogic
