#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fslsense {

/// Worker count from FSLSENSE_JOBS, else hardware concurrency (at least 1).
inline int default_jobs() {
  if (const char* env = std::getenv("FSLSENSE_JOBS")) {
    try {
      const int j = std::stoi(env);
      if (j >= 1) return j;
    } catch (const std::exception&) {
    }
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// out[i] = fn(i) for i in [0, count), evaluated by up to `jobs` workers.
/// Results are placed by index, so the output does not depend on scheduling.
/// The first exception thrown by any task is rethrown after all workers stop.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t count, int jobs, Fn&& fn) {
  std::vector<Result> out(count);
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count && !failed; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  std::vector<std::jthread> pool;
  pool.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace fslsense
