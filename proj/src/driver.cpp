#include "giant/driver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "giant/error.hpp"

namespace giant {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

void check_shards(std::span<const WorkerShard> shards, const Fabric& fabric,
                  const LabeledDataset& dataset) {
  if (shards.size() != fabric.size())
    throw PreconditionError("one shard per fabric worker is required");
  for (const WorkerShard& s : shards) {
    if (s.size() == 0) throw PreconditionError("empty shard");
    if (s.total_rows != dataset.n()) throw PreconditionError("shard does not belong to dataset");
  }
}

}  // namespace

Vec default_step_candidates() {
  Vec c;
  double a = 1.0;
  for (int k = 0; k < 10; ++k) {
    c.push_back(a);
    a /= 4.0;
  }
  return c;
}

void LineSearchSettings::validate() const {
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw ConfigError("armijo_c must lie in (0, 1)");
  if (candidates.empty()) throw ConfigError("line search needs at least one step candidate");
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (!(candidates[k] > 0.0) || !std::isfinite(candidates[k]))
      throw ConfigError("step candidates must be positive and finite");
    if (k > 0 && !(candidates[k] < candidates[k - 1]))
      throw ConfigError("step candidates must be strictly decreasing");
  }
}

StepChoice select_step(std::span<const double> candidate_values, double f_w, double directional,
                       double c, std::span<const double> candidates) {
  if (candidate_values.size() != candidates.size() || candidates.empty())
    throw DimensionMismatch("select_step: values and candidates must align");
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (candidate_values[k] <= f_w + candidates[k] * c * directional)
      return {candidates[k], true};
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < candidates.size(); ++k)
    if (candidate_values[k] < candidate_values[best]) best = k;
  if (candidate_values[best] < f_w) return {candidates[best], false};
  std::size_t smallest = 0;
  for (std::size_t k = 1; k < candidates.size(); ++k)
    if (candidates[k] < candidates[smallest]) smallest = k;
  return {candidates[smallest], false};
}

Vec distributed_gradient(Fabric& fabric, std::span<const WorkerShard> shards,
                         const ObjectiveSpec& spec, std::span<const double> w) {
  const std::vector<Vec> delivered = fabric.broadcast(w);
  const std::vector<Vec> local = fabric.run_workers([&](std::size_t i) {
    return scaled(shards[i].weight(), local_gradient(shards[i], spec, delivered[i]));
  });
  return fabric.reduce_sum(local);
}

LineSearchOutcome distributed_line_search(Fabric& fabric, std::span<const WorkerShard> shards,
                                          const ObjectiveSpec& spec, std::span<const double> w,
                                          std::span<const double> descent,
                                          std::span<const double> g,
                                          const LineSearchSettings& settings) {
  Vec steps{0.0};
  steps.insert(steps.end(), settings.candidates.begin(), settings.candidates.end());
  const std::vector<Vec> delivered = fabric.broadcast(descent);
  const std::vector<Vec> local = fabric.run_workers([&](std::size_t i) {
    return local_linesearch_values(shards[i], spec, w, delivered[i], steps, fabric.size());
  });
  const Vec values = fabric.reduce_concat_scalars(local);

  LineSearchOutcome out;
  out.f_w = values.front();
  const std::span<const double> candidate_values(values.data() + 1, values.size() - 1);
  out.step = select_step(candidate_values, out.f_w, dot(descent, g), settings.armijo_c,
                         settings.candidates);
  for (std::size_t k = 0; k < settings.candidates.size(); ++k)
    if (settings.candidates[k] == out.step.alpha) out.f_next = candidate_values[k];
  return out;
}

TraceRecorder::TraceRecorder(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                             std::optional<std::span<const double>> reference_wstar,
                             bool record_wall_time)
    : spec_(spec), dataset_(dataset), record_wall_time_(record_wall_time), start_(now_seconds()) {
  if (reference_wstar) wstar_.emplace(reference_wstar->begin(), reference_wstar->end());
}

IterationTrace& TraceRecorder::record(std::size_t iteration, std::span<const double> w,
                                      double grad_norm, double step, const NetworkStats& stats) {
  IterationTrace t;
  t.iteration = iteration;
  t.objective = objective_value(spec_, dataset_, w);
  t.grad_norm = grad_norm;
  t.error_norm = wstar_ ? norm2(subtract(w, *wstar_)) : std::numeric_limits<double>::quiet_NaN();
  t.step_size = step;
  t.stats = stats;
  t.wall_seconds = record_wall_time_ ? now_seconds() - start_ : 0.0;
  trace_.push_back(t);
  return trace_.back();
}

RunResult run_giant(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                    std::span<const WorkerShard> shards, Fabric& fabric, const GiantConfig& config,
                    std::span<const double> w0,
                    std::optional<std::span<const double>> reference_wstar) {
  validate(spec, dataset);
  if (config.line_search.enabled) config.line_search.validate();
  check_shards(shards, fabric, dataset);
  if (w0.size() != dataset.d()) throw DimensionMismatch("run_giant: w0 length");

  RunResult result;
  TraceRecorder recorder(spec, dataset, reference_wstar, config.record_wall_time);
  Vec w(w0.begin(), w0.end());
  const double inv_m = 1.0 / static_cast<double>(fabric.size());
  try {
    for (std::size_t t = 0; t < config.max_iterations; ++t) {
      // Rounds 1-2: broadcast w_t, reduce local gradients.
      const Vec g = distributed_gradient(fabric, shards, spec, w);
      const double g_norm = norm2(g);
      if (g_norm <= config.stop_tol) {
        recorder.record(t, w, g_norm, 0.0, fabric.stats());
        result.converged = true;
        break;
      }
      // Rounds 3-4: broadcast g_t, reduce ANT directions.
      const std::vector<Vec> g_at = fabric.broadcast(g);
      const std::vector<Vec> local = fabric.run_workers([&](std::size_t i) {
        const WorkerShard& shard = shards[i];
        if (config.local_solve == LocalSolve::direct)
          return exact_local_newton(shard, spec, w, g_at[i]);
        const CgSettings cg = config.cg.value_or(shard.cg);
        return cg_solve(local_hessian_operator(shard, spec, w), g_at[i], cg.max_iter, cg.rel_tol)
            .solution;
      });
      Vec p = fabric.reduce_sum(local);
      for (double& x : p) x *= inv_m;

      StepChoice step{1.0, true};
      if (config.line_search.enabled) {
        // Rounds 5-6.
        const Vec descent = scaled(-1.0, p);
        step = distributed_line_search(fabric, shards, spec, w, descent, g, config.line_search).step;
      }
      recorder.record(t, w, g_norm, step.alpha, fabric.stats()).armijo_fallback = !step.satisfied;
      axpy(-step.alpha, p, w);
      if (!all_finite(w)) throw DivergenceError("run_giant: iterate is not finite");
    }
  } catch (const std::exception& e) {
    result.failure = e.what();
  }
  result.trace = std::move(recorder.trace());
  result.w = std::move(w);
  return result;
}

Vec newton_direction_oracle(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                            std::span<const double> w, std::size_t limit) {
  const DenseMatrix h = materialize_hessian(spec, dataset, w, limit);
  return direct_spd_solve(h, gradient(spec, dataset, w));
}

Vec solve_reference(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                    const ReferenceSettings& settings) {
  validate(spec, dataset);
  if (!(spec.reg.min_eigenvalue() > 0.0))
    throw PreconditionError("solve_reference: needs a strongly convex regularizer");
  const std::size_t d = dataset.d();
  Vec w(d, 0.0);
  const double g0 = norm2(gradient(spec, dataset, w));
  if (g0 == 0.0) return w;

  Vec best = w;
  double best_norm = g0;
  std::size_t stalled = 0;
  for (std::size_t it = 0; it < settings.max_iterations; ++it) {
    const Vec g = gradient(spec, dataset, w);
    const double gn = norm2(g);
    if (gn <= settings.tol * g0) return w;
    if (gn < best_norm) {
      best_norm = gn;
      best = w;
      stalled = 0;
    } else if (++stalled >= 3) {
      // Rounding floor of the gradient: accept if it is far below the start.
      if (best_norm <= 1e-8 * g0) return best;
      break;
    }
    const DenseMatrix a = scaled_rows(spec, dataset, w);
    const LinearOperator h = [&](std::span<const double> v) {
      Vec hv = multiply_transposed(a, multiply(a, v));
      axpy(1.0, spec.reg.apply(v), hv);
      return hv;
    };
    const Vec p = cg_solve(h, g, 20 * d + 100, 1e-15).solution;

    // Backtracking on f; near the optimum the decrease is below rounding and
    // the full step is taken.
    const double f = objective_value(spec, dataset, w);
    const double decrease = dot(p, g);
    double alpha = 1.0;
    if (decrease > 1e-12 * std::abs(f)) {
      for (int k = 0; k < 40; ++k) {
        const Vec trial = add(w, scaled(-alpha, p));
        if (objective_value(spec, dataset, trial) <= f - 1e-4 * alpha * decrease) break;
        alpha *= 0.5;
      }
    }
    axpy(-alpha, p, w);
  }
  const double final_norm = norm2(gradient(spec, dataset, w));
  if (final_norm <= settings.tol * g0) return w;
  if (std::min(final_norm, best_norm) <= 1e-8 * g0) return final_norm <= best_norm ? w : best;
  throw ReferenceFailure("solve_reference: no convergence within the iteration cap");
}

}  // namespace giant
