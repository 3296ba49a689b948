#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "giant/linalg.hpp"
#include "giant/objective.hpp"

namespace giant {

struct CgSettings {
  std::size_t max_iter = 100;
  double rel_tol = 1e-8;

  // Fixed iteration budget q from the CG error bound, with the residual early
  // exit disabled.
  static CgSettings budget(double kappa_tilde, double epsilon0);
};

enum class LocalSolve { cg, direct };

struct WorkerShard {
  std::size_t worker_id = 0;
  std::vector<std::size_t> local_indices;  // global row indices
  std::size_t total_rows = 0;              // n of the partitioned dataset
  LabeledDataset data;                     // rows of local_indices, in order
  CgSettings cg;

  std::size_t size() const { return local_indices.size(); }
  // s / n: weight of this shard's sample mean in the global mean.
  double weight() const;
};

// (1/s) sum_{j in shard} l'_j(w^T x_j) x_j + M w
Vec local_gradient(const WorkerShard& shard, const ObjectiveSpec& spec, std::span<const double> w);

// H~ v = (1/s) A_i^T (A_i v) + M v, with A_i the shard's scaled rows at w.
LinearOperator local_hessian_operator(const WorkerShard& shard, const ObjectiveSpec& spec,
                                      std::span<const double> w);

DenseMatrix local_hessian(const WorkerShard& shard, const ObjectiveSpec& spec,
                          std::span<const double> w, std::size_t limit = kOracleDimLimit);

struct AntDirection {
  Vec direction;
  CgReport cg;
};

// Solves H~_i p = g by CG from zero with the shard's CG settings.
AntDirection local_ant_direction(const WorkerShard& shard, const ObjectiveSpec& spec,
                                 std::span<const double> w, std::span<const double> g);

// Same sub-problem by materializing H~_i and a Cholesky solve.
Vec exact_local_newton(const WorkerShard& shard, const ObjectiveSpec& spec,
                       std::span<const double> w, std::span<const double> g,
                       std::size_t limit = kOracleDimLimit);

// Local objective at w + alpha p for every candidate alpha. Each value is
// (1/n) sum_{j in shard} l_j + reg / num_workers, so a plain sum over all
// workers reconstructs f(w + alpha p).
Vec local_linesearch_values(const WorkerShard& shard, const ObjectiveSpec& spec,
                            std::span<const double> w, std::span<const double> p,
                            std::span<const double> step_candidates, std::size_t num_workers);

// ceil(log(8 / eps0^2) / log((sqrt(k) + 1) / (sqrt(k) - 1))); 1 when k <= 1.
std::size_t prop1_cg_budget(double kappa_tilde, double epsilon0);

}  // namespace giant
