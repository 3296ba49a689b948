#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <span>
#include <type_traits>
#include <vector>

#include "giant/error.hpp"
#include "giant/linalg.hpp"

namespace giant {

struct NetworkStats {
  std::uint64_t rounds = 0;
  std::uint64_t driver_to_worker_words = 0;
  std::uint64_t worker_to_driver_words = 0;
  friend bool operator==(const NetworkStats&, const NetworkStats&) = default;
};

enum class ExecutionMode {
  sequential,  // workers run round-robin on the calling thread (reference)
  parallel,    // workers run concurrently under OpenMP
};

// Simulated synchronous Broadcast / Reduce fabric between one driver and m
// workers. Word counts use flat (star) topology: payload length times m.
class Fabric {
 public:
  explicit Fabric(std::size_t workers, ExecutionMode mode = ExecutionMode::parallel);

  std::size_t size() const { return workers_; }
  ExecutionMode mode() const { return mode_; }
  const NetworkStats& stats() const { return stats_; }
  bool poisoned() const { return poisoned_; }

  // One-to-all: every worker receives its own copy of the payload.
  std::vector<Vec> broadcast(std::span<const double> payload);

  // All-to-one elementwise sum, accumulated in ascending worker order.
  Vec reduce_sum(std::span<const Vec> per_worker);

  // Reduce over fixed-length lists of scalars (line-search objective values).
  Vec reduce_concat_scalars(std::span<const Vec> per_worker);

  // Runs body(worker_index) for every worker between collectives. The first
  // failure (lowest worker index) poisons the fabric and is rethrown.
  template <class F>
  auto run_workers(F&& body) -> std::vector<std::invoke_result_t<F&, std::size_t>>;

 private:
  void check_alive() const;
  Vec reduce(std::span<const Vec> per_worker);

  std::size_t workers_;
  ExecutionMode mode_;
  NetworkStats stats_;
  bool poisoned_ = false;
};

template <class F>
auto Fabric::run_workers(F&& body) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using Result = std::invoke_result_t<F&, std::size_t>;
  check_alive();
  std::vector<Result> results(workers_);
  std::vector<std::exception_ptr> errors(workers_);
  const auto run_one = [&](std::size_t i) {
    try {
      results[i] = body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (mode_ == ExecutionMode::parallel) {
    const auto m = static_cast<std::ptrdiff_t>(workers_);
#pragma omp parallel for schedule(static, 1)
    for (std::ptrdiff_t i = 0; i < m; ++i) run_one(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < workers_; ++i) run_one(i);
  }
  for (const std::exception_ptr& e : errors) {
    if (e) {
      poisoned_ = true;
      std::rethrow_exception(e);
    }
  }
  return results;
}

}  // namespace giant
