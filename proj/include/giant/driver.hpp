#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "giant/comms.hpp"
#include "giant/linalg.hpp"
#include "giant/objective.hpp"
#include "giant/worker.hpp"

namespace giant {

// {4^0, 4^-1, ..., 4^-9}
Vec default_step_candidates();

struct LineSearchSettings {
  bool enabled = true;
  double armijo_c = 0.1;
  Vec candidates = default_step_candidates();

  void validate() const;
};

struct GiantConfig {
  std::size_t max_iterations = 50;
  LineSearchSettings line_search;
  std::optional<CgSettings> cg;  // overrides every shard's CG settings when set
  LocalSolve local_solve = LocalSolve::cg;
  double stop_tol = 1e-10;  // on ||g_t||_2
  std::uint64_t seed = 0;
  bool record_wall_time = false;
};

struct IterationTrace {
  std::size_t iteration = 0;
  double objective = 0.0;   // f(w_t)
  double grad_norm = 0.0;   // ||g_t||_2
  double error_norm = 0.0;  // ||w_t - w*||_2, NaN without a reference
  double step_size = 0.0;   // step taken from w_t; 0 when the run stopped at w_t
  NetworkStats stats;       // cumulative, after this iteration's collectives
  double wall_seconds = 0.0;
  bool armijo_fallback = false;
};

struct RunResult {
  std::vector<IterationTrace> trace;
  Vec w;  // final iterate
  bool converged = false;
  std::string failure;  // non-empty when a worker or the solver aborted the run

  bool ok() const { return failure.empty(); }
};

struct StepChoice {
  double alpha = 0.0;
  bool satisfied = false;
};

// Largest candidate with f(w + a d) <= f(w) + a c <d, g>. If none passes, the
// candidate with the smallest value when it still decreases f, otherwise the
// smallest candidate; satisfied is false in both fallbacks.
StepChoice select_step(std::span<const double> candidate_values, double f_w, double directional,
                       double c, std::span<const double> candidates);

struct LineSearchOutcome {
  StepChoice step;
  double f_w = 0.0;
  double f_next = 0.0;
};

// Two collectives: broadcast the descent direction, reduce the local objective
// values at {0} + candidates.
LineSearchOutcome distributed_line_search(Fabric& fabric, std::span<const WorkerShard> shards,
                                          const ObjectiveSpec& spec, std::span<const double> w,
                                          std::span<const double> descent,
                                          std::span<const double> g,
                                          const LineSearchSettings& settings);

// Two collectives: broadcast w, reduce the shard-weighted local gradients.
Vec distributed_gradient(Fabric& fabric, std::span<const WorkerShard> shards,
                         const ObjectiveSpec& spec, std::span<const double> w);

RunResult run_giant(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                    std::span<const WorkerShard> shards, Fabric& fabric, const GiantConfig& config,
                    std::span<const double> w0,
                    std::optional<std::span<const double>> reference_wstar = std::nullopt);

// H^{-1} g on the materialized global Hessian.
Vec newton_direction_oracle(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                            std::span<const double> w, std::size_t limit = kOracleDimLimit);

struct ReferenceSettings {
  double tol = 1e-14;  // on ||g|| relative to ||g(0)||
  std::size_t max_iterations = 100;
};

// Single-machine Newton-CG to high precision; requires a strongly convex
// objective.
Vec solve_reference(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                    const ReferenceSettings& settings = {});

// Shared trace bookkeeping for all solvers.
class TraceRecorder {
 public:
  TraceRecorder(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                std::optional<std::span<const double>> reference_wstar, bool record_wall_time);

  IterationTrace& record(std::size_t iteration, std::span<const double> w, double grad_norm,
                         double step, const NetworkStats& stats);
  std::vector<IterationTrace>& trace() { return trace_; }

 private:
  const ObjectiveSpec& spec_;
  const LabeledDataset& dataset_;
  std::optional<Vec> wstar_;
  bool record_wall_time_;
  double start_;
  std::vector<IterationTrace> trace_;
};

}  // namespace giant
