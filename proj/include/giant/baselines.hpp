#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "giant/comms.hpp"
#include "giant/driver.hpp"
#include "giant/objective.hpp"
#include "giant/rng.hpp"
#include "giant/worker.hpp"

namespace giant {

// Accelerated gradient descent with heavy-ball momentum:
//   v_{t+1} = beta v_t + g_t,  w_{t+1} = w_t - alpha v_{t+1},  v_0 = 0.
struct AgdConfig {
  double step_alpha = 1.0;
  double momentum_beta = 0.9;
  std::size_t max_iterations = 1000;
  double stop_tol = 1e-10;
  bool record_wall_time = false;
};

RunResult run_agd(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                  std::span<const WorkerShard> shards, Fabric& fabric, const AgdConfig& config,
                  std::span<const double> w0,
                  std::optional<std::span<const double>> reference_wstar = std::nullopt);

struct LbfgsConfig {
  std::size_t history_size = 10;
  LineSearchSettings line_search;
  std::size_t max_iterations = 200;
  double stop_tol = 1e-10;
  bool record_wall_time = false;
};

struct CurvaturePair {
  Vec s;  // w_{t+1} - w_t
  Vec y;  // g_{t+1} - g_t
};

// Two-loop recursion: approximate inverse Hessian times g, with initial
// scaling <s, y> / <y, y> from the newest pair. Empty history returns g.
Vec lbfgs_two_loop(std::span<const double> g, const std::deque<CurvaturePair>& history);

RunResult run_lbfgs(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                    std::span<const WorkerShard> shards, Fabric& fabric, const LbfgsConfig& config,
                    std::span<const double> w0,
                    std::optional<std::span<const double>> reference_wstar = std::nullopt);

// Smooth finite sum h(u) = (1/N) sum_j h_j(u).
class FiniteSum {
 public:
  virtual ~FiniteSum() = default;
  virtual std::size_t count() const = 0;
  virtual std::size_t dim() const = 0;
  virtual Vec full_gradient(std::span<const double> u) const = 0;
  // out += scale * grad h_j(u)
  virtual void add_component_gradient(std::size_t j, std::span<const double> u, double scale,
                                      std::span<double> out) const = 0;
};

struct SvrgConfig {
  double step = 0.1;
  std::size_t max_epochs = 30;
  std::size_t inner_loop_len = 0;  // 0 means one pass: count() inner steps
};

// grad h_j(u) - grad h_j(snapshot) + snapshot_gradient
Vec svrg_estimator(const FiniteSum& problem, std::size_t j, std::span<const double> u,
                   std::span<const double> snapshot, std::span<const double> snapshot_gradient);

Vec svrg_minimize(const FiniteSum& problem, const SvrgConfig& config, std::span<const double> u0,
                  Rng& rng);

// Local DANE sub-problem on one shard:
//   h(u) = f_i(u) - <grad f_i(w) - eta g, u>
class DaneSubproblem final : public FiniteSum {
 public:
  DaneSubproblem(const WorkerShard& shard, const ObjectiveSpec& spec, std::span<const double> w,
                 std::span<const double> global_gradient, double eta);

  std::size_t count() const override { return shard_.size(); }
  std::size_t dim() const override { return shard_.data.d(); }
  Vec full_gradient(std::span<const double> u) const override;
  void add_component_gradient(std::size_t j, std::span<const double> u, double scale,
                              std::span<double> out) const override;
  double value(std::span<const double> u) const;

  // Newton iterations on h, each linear system solved per `solve`.
  Vec solve_newton(std::span<const double> u0, LocalSolve solve, const CgSettings& cg,
                   double rel_tol = 1e-13, std::size_t max_iterations = 50) const;

 private:
  const WorkerShard& shard_;
  const ObjectiveSpec& spec_;
  Vec linear_;  // grad f_i(w) - eta g
};

enum class DaneLocalSolver { svrg, newton };

struct DaneConfig {
  double dane_step_eta = 1.0;
  SvrgConfig svrg;
  DaneLocalSolver local_solver = DaneLocalSolver::svrg;
  LocalSolve newton_linear_solve = LocalSolve::cg;
  LineSearchSettings line_search;
  std::size_t max_iterations = 50;
  double stop_tol = 1e-10;
  std::uint64_t seed = 0;
  bool record_wall_time = false;
};

RunResult run_dane(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                   std::span<const WorkerShard> shards, Fabric& fabric, const DaneConfig& config,
                   std::span<const double> w0,
                   std::optional<std::span<const double>> reference_wstar = std::nullopt);

// Sequential sweep over candidate configurations; the best run has the lowest
// final objective among runs that did not fail.
template <class Config>
struct GridSearchResult {
  std::vector<Config> configs;
  std::vector<RunResult> runs;
  std::size_t best = 0;
};

template <class Config>
GridSearchResult<Config> grid_search(std::vector<Config> configs,
                                     const std::function<RunResult(const Config&)>& runner) {
  GridSearchResult<Config> out;
  out.configs = std::move(configs);
  double best_value = 0.0;
  bool have_best = false;
  for (std::size_t k = 0; k < out.configs.size(); ++k) {
    out.runs.push_back(runner(out.configs[k]));
    const RunResult& r = out.runs.back();
    if (!r.ok() || r.trace.empty()) continue;
    const double value = r.trace.back().objective;
    if (!have_best || value < best_value) {
      best_value = value;
      out.best = k;
      have_best = true;
    }
  }
  return out;
}

// The AGD step and momentum grids used in the experiments.
std::vector<AgdConfig> agd_grid(const AgdConfig& base, std::span<const double> steps,
                                std::span<const double> momenta);

}  // namespace giant
