#include "fwlbp/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fwlbp {

unsigned DefaultJobs() {
  if (const char* env = std::getenv("FWLBP_JOBS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void ParallelFor(std::size_t n, unsigned jobs,
                 const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = DefaultJobs();
  const auto workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  std::mutex mu;
  std::size_t failed_index = n;
  std::exception_ptr failure;
  auto record = [&](std::size_t i) {
    std::lock_guard<std::mutex> lock(mu);
    if (i < failed_index) {
      failed_index = i;
      failure = std::current_exception();
    }
  };

  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        record(i);
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            record(i);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace fwlbp
