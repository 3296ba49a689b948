#include "giant/worker.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "giant/error.hpp"
#include "giant/kernels.hpp"

namespace giant {

CgSettings CgSettings::budget(double kappa_tilde, double epsilon0) {
  return CgSettings{prop1_cg_budget(kappa_tilde, epsilon0), 0.0};
}

double WorkerShard::weight() const {
  return static_cast<double>(size()) / static_cast<double>(total_rows);
}

Vec local_gradient(const WorkerShard& shard, const ObjectiveSpec& spec, std::span<const double> w) {
  return gradient(spec, shard.data, w);
}

LinearOperator local_hessian_operator(const WorkerShard& shard, const ObjectiveSpec& spec,
                                      std::span<const double> w) {
  // scaled_rows divides by sqrt(rows of the view), which is sqrt(s) here.
  auto a = std::make_shared<const DenseMatrix>(scaled_rows(spec, shard.data, w));
  return [a, reg = spec.reg](std::span<const double> v) {
    Vec hv = kernels::gram_apply(*a, v);
    axpy(1.0, reg.apply(v), hv);
    return hv;
  };
}

DenseMatrix local_hessian(const WorkerShard& shard, const ObjectiveSpec& spec,
                          std::span<const double> w, std::size_t limit) {
  return materialize_hessian(spec, shard.data, w, limit);
}

AntDirection local_ant_direction(const WorkerShard& shard, const ObjectiveSpec& spec,
                                 std::span<const double> w, std::span<const double> g) {
  if (g.size() != shard.data.d()) throw DimensionMismatch("local_ant_direction: gradient length");
  AntDirection out;
  out.cg = cg_solve(local_hessian_operator(shard, spec, w), g, shard.cg.max_iter, shard.cg.rel_tol);
  out.direction = out.cg.solution;
  return out;
}

Vec exact_local_newton(const WorkerShard& shard, const ObjectiveSpec& spec,
                       std::span<const double> w, std::span<const double> g, std::size_t limit) {
  return direct_spd_solve(local_hessian(shard, spec, w, limit), g);
}

Vec local_linesearch_values(const WorkerShard& shard, const ObjectiveSpec& spec,
                            std::span<const double> w, std::span<const double> p,
                            std::span<const double> step_candidates, std::size_t num_workers) {
  validate(spec, shard.data);
  if (w.size() != p.size() || w.size() != shard.data.d())
    throw DimensionMismatch("local_linesearch_values: dimension mismatch");
  if (!all_finite(step_candidates)) throw RangeError("line-search candidates must be finite");
  const Vec zw = kernels::matvec(shard.data.features, w);
  const Vec zp = kernels::matvec(shard.data.features, p);
  const double inv_n = 1.0 / static_cast<double>(shard.total_rows);
  const double reg_share = 1.0 / static_cast<double>(num_workers);

  Vec values;
  values.reserve(step_candidates.size());
  Vec trial(w.size());
  for (double alpha : step_candidates) {
    double sum = 0.0;
    for (std::size_t j = 0; j < zw.size(); ++j)
      sum += loss::value(spec.loss, zw[j] + alpha * zp[j], shard.data.labels[j]);
    for (std::size_t k = 0; k < w.size(); ++k) trial[k] = w[k] + alpha * p[k];
    values.push_back(inv_n * sum + reg_share * spec.reg.value(trial));
  }
  return values;
}

std::size_t prop1_cg_budget(double kappa_tilde, double epsilon0) {
  if (!(epsilon0 > 0.0 && epsilon0 < 1.0))
    throw RangeError("prop1_cg_budget: epsilon0 must lie in (0, 1)");
  if (!(kappa_tilde > 1.0)) return 1;
  const double root = std::sqrt(kappa_tilde);
  const double q = std::log(8.0 / (epsilon0 * epsilon0)) / std::log((root + 1.0) / (root - 1.0));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(q)));
}

}  // namespace giant
