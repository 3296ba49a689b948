#include "giant/baselines.hpp"

#include <cmath>

#include "giant/error.hpp"
#include "giant/kernels.hpp"

namespace giant {

namespace {

void check_run(const ObjectiveSpec& spec, const LabeledDataset& dataset,
               std::span<const WorkerShard> shards, const Fabric& fabric,
               std::span<const double> w0) {
  validate(spec, dataset);
  if (shards.size() != fabric.size())
    throw PreconditionError("one shard per fabric worker is required");
  if (w0.size() != dataset.d()) throw DimensionMismatch("w0 length does not match features");
}

}  // namespace

RunResult run_agd(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                  std::span<const WorkerShard> shards, Fabric& fabric, const AgdConfig& config,
                  std::span<const double> w0,
                  std::optional<std::span<const double>> reference_wstar) {
  check_run(spec, dataset, shards, fabric, w0);
  if (!(config.step_alpha > 0.0)) throw ConfigError("agd: step must be positive");
  if (!(config.momentum_beta >= 0.0 && config.momentum_beta < 1.0))
    throw ConfigError("agd: momentum must lie in [0, 1)");

  RunResult result;
  TraceRecorder recorder(spec, dataset, reference_wstar, config.record_wall_time);
  Vec w(w0.begin(), w0.end());
  Vec v(w.size(), 0.0);
  const double f0 = objective_value(spec, dataset, w);
  try {
    for (std::size_t t = 0; t < config.max_iterations; ++t) {
      const Vec g = distributed_gradient(fabric, shards, spec, w);
      const double g_norm = norm2(g);
      const bool done = g_norm <= config.stop_tol;
      const IterationTrace& rec =
          recorder.record(t, w, g_norm, done ? 0.0 : config.step_alpha, fabric.stats());
      if (t > 0 && !(rec.objective <= 10.0 * f0))
        throw DivergenceError("agd: objective exceeded 10x its starting value");
      if (done) {
        result.converged = true;
        break;
      }
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = config.momentum_beta * v[k] + g[k];
      axpy(-config.step_alpha, v, w);
    }
  } catch (const std::exception& e) {
    result.failure = e.what();
  }
  result.trace = std::move(recorder.trace());
  result.w = std::move(w);
  return result;
}

Vec lbfgs_two_loop(std::span<const double> g, const std::deque<CurvaturePair>& history) {
  Vec q(g.begin(), g.end());
  if (history.empty()) return q;
  std::vector<double> a(history.size()), rho(history.size());
  for (std::size_t k = history.size(); k-- > 0;) {
    const CurvaturePair& pair = history[k];
    rho[k] = 1.0 / dot(pair.y, pair.s);
    a[k] = rho[k] * dot(pair.s, q);
    axpy(-a[k], pair.y, q);
  }
  const CurvaturePair& newest = history.back();
  Vec r = scaled(dot(newest.s, newest.y) / dot(newest.y, newest.y), q);
  for (std::size_t k = 0; k < history.size(); ++k) {
    const CurvaturePair& pair = history[k];
    const double b = rho[k] * dot(pair.y, r);
    axpy(a[k] - b, pair.s, r);
  }
  return r;
}

RunResult run_lbfgs(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                    std::span<const WorkerShard> shards, Fabric& fabric, const LbfgsConfig& config,
                    std::span<const double> w0,
                    std::optional<std::span<const double>> reference_wstar) {
  check_run(spec, dataset, shards, fabric, w0);
  if (config.line_search.enabled) config.line_search.validate();

  RunResult result;
  TraceRecorder recorder(spec, dataset, reference_wstar, config.record_wall_time);
  Vec w(w0.begin(), w0.end());
  Vec w_prev, g_prev;
  std::deque<CurvaturePair> history;
  try {
    for (std::size_t t = 0; t < config.max_iterations; ++t) {
      const Vec g = distributed_gradient(fabric, shards, spec, w);
      const double g_norm = norm2(g);
      if (g_norm <= config.stop_tol) {
        recorder.record(t, w, g_norm, 0.0, fabric.stats());
        result.converged = true;
        break;
      }
      if (!w_prev.empty() && config.history_size > 0) {
        CurvaturePair pair{subtract(w, w_prev), subtract(g, g_prev)};
        if (dot(pair.s, pair.y) > 1e-12 * norm2(pair.s) * norm2(pair.y)) {
          history.push_back(std::move(pair));
          if (history.size() > config.history_size) history.pop_front();
        }
      }
      Vec p = lbfgs_two_loop(g, history);
      if (!(dot(p, g) > 0.0) || !all_finite(p)) {
        history.clear();
        p = g;
      }
      StepChoice step{1.0, true};
      if (config.line_search.enabled) {
        const Vec descent = scaled(-1.0, p);
        step = distributed_line_search(fabric, shards, spec, w, descent, g, config.line_search).step;
      }
      recorder.record(t, w, g_norm, step.alpha, fabric.stats()).armijo_fallback = !step.satisfied;
      w_prev = w;
      g_prev = g;
      axpy(-step.alpha, p, w);
      if (!all_finite(w)) throw DivergenceError("lbfgs: iterate is not finite");
    }
  } catch (const std::exception& e) {
    result.failure = e.what();
  }
  result.trace = std::move(recorder.trace());
  result.w = std::move(w);
  return result;
}

Vec svrg_estimator(const FiniteSum& problem, std::size_t j, std::span<const double> u,
                   std::span<const double> snapshot, std::span<const double> snapshot_gradient) {
  Vec est(snapshot_gradient.begin(), snapshot_gradient.end());
  problem.add_component_gradient(j, u, 1.0, est);
  problem.add_component_gradient(j, snapshot, -1.0, est);
  return est;
}

Vec svrg_minimize(const FiniteSum& problem, const SvrgConfig& config, std::span<const double> u0,
                  Rng& rng) {
  if (!(config.step > 0.0)) throw ConfigError("svrg: step must be positive");
  if (problem.count() == 0) throw PreconditionError("svrg: empty finite sum");
  const std::size_t inner = config.inner_loop_len == 0 ? problem.count() : config.inner_loop_len;
  std::uniform_int_distribution<std::size_t> pick(0, problem.count() - 1);
  Vec u(u0.begin(), u0.end());
  Vec est(u.size());
  for (std::size_t epoch = 0; epoch < config.max_epochs; ++epoch) {
    const Vec snapshot = u;
    const Vec mu = problem.full_gradient(snapshot);
    if (norm2(mu) == 0.0) break;
    for (std::size_t k = 0; k < inner; ++k) {
      const std::size_t j = pick(rng);
      est = mu;
      problem.add_component_gradient(j, u, 1.0, est);
      problem.add_component_gradient(j, snapshot, -1.0, est);
      axpy(-config.step, est, u);
    }
    if (!all_finite(u)) throw DivergenceError("svrg: iterate is not finite");
  }
  return u;
}

DaneSubproblem::DaneSubproblem(const WorkerShard& shard, const ObjectiveSpec& spec,
                               std::span<const double> w, std::span<const double> global_gradient,
                               double eta)
    : shard_(shard), spec_(spec), linear_(local_gradient(shard, spec, w)) {
  axpy(-eta, global_gradient, linear_);
}

Vec DaneSubproblem::full_gradient(std::span<const double> u) const {
  return subtract(local_gradient(shard_, spec_, u), linear_);
}

void DaneSubproblem::add_component_gradient(std::size_t j, std::span<const double> u, double scale,
                                            std::span<double> out) const {
  const auto x = shard_.data.features.row(j);
  const double z = dot(x, u);
  axpy(scale * loss::first(spec_.loss, z, shard_.data.labels[j]), x, out);
  axpy(scale, spec_.reg.apply(u), out);
  axpy(-scale, linear_, out);
}

double DaneSubproblem::value(std::span<const double> u) const {
  return objective_value(spec_, shard_.data, u) - dot(linear_, u);
}

Vec DaneSubproblem::solve_newton(std::span<const double> u0, LocalSolve solve, const CgSettings& cg,
                                 double rel_tol, std::size_t max_iterations) const {
  Vec u(u0.begin(), u0.end());
  const double start = norm2(full_gradient(u));
  if (start == 0.0) return u;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    const Vec grad = full_gradient(u);
    if (norm2(grad) <= rel_tol * start) break;
    const Vec step = solve == LocalSolve::direct
                         ? exact_local_newton(shard_, spec_, u, grad)
                         : cg_solve(local_hessian_operator(shard_, spec_, u), grad, cg.max_iter,
                                    cg.rel_tol)
                               .solution;
    // Damped step keeps the logistic sub-problem monotone far from its optimum.
    const double h0 = value(u);
    const double decrease = dot(step, grad);
    double alpha = 1.0;
    if (decrease > 1e-12 * (1.0 + std::abs(h0))) {
      for (int k = 0; k < 40; ++k) {
        if (value(add(u, scaled(-alpha, step))) <= h0 - 1e-4 * alpha * decrease) break;
        alpha *= 0.5;
      }
    }
    axpy(-alpha, step, u);
  }
  return u;
}

RunResult run_dane(const ObjectiveSpec& spec, const LabeledDataset& dataset,
                   std::span<const WorkerShard> shards, Fabric& fabric, const DaneConfig& config,
                   std::span<const double> w0,
                   std::optional<std::span<const double>> reference_wstar) {
  check_run(spec, dataset, shards, fabric, w0);
  if (config.line_search.enabled) config.line_search.validate();
  if (!(config.dane_step_eta > 0.0)) throw ConfigError("dane: eta must be positive");

  RunResult result;
  TraceRecorder recorder(spec, dataset, reference_wstar, config.record_wall_time);
  Vec w(w0.begin(), w0.end());
  const double inv_m = 1.0 / static_cast<double>(fabric.size());
  try {
    for (std::size_t t = 0; t < config.max_iterations; ++t) {
      const Vec g = distributed_gradient(fabric, shards, spec, w);
      const double g_norm = norm2(g);
      if (g_norm <= config.stop_tol) {
        recorder.record(t, w, g_norm, 0.0, fabric.stats());
        result.converged = true;
        break;
      }
      const std::vector<Vec> g_at = fabric.broadcast(g);
      const std::vector<Vec> local = fabric.run_workers([&](std::size_t i) {
        const DaneSubproblem sub(shards[i], spec, w, g_at[i], config.dane_step_eta);
        if (config.local_solver == DaneLocalSolver::newton)
          return sub.solve_newton(w, config.newton_linear_solve, shards[i].cg);
        Rng rng = make_rng(config.seed, "dane.svrg", t * fabric.size() + i);
        return svrg_minimize(sub, config.svrg, w, rng);
      });
      const Vec u_sum = fabric.reduce_sum(local);
      // Direction such that w - p is the averaged local solution.
      Vec p(w.size());
      for (std::size_t k = 0; k < w.size(); ++k) p[k] = w[k] - inv_m * u_sum[k];

      StepChoice step{1.0, true};
      if (config.line_search.enabled) {
        const Vec descent = scaled(-1.0, p);
        step = distributed_line_search(fabric, shards, spec, w, descent, g, config.line_search).step;
      }
      recorder.record(t, w, g_norm, step.alpha, fabric.stats()).armijo_fallback = !step.satisfied;
      axpy(-step.alpha, p, w);
      if (!all_finite(w)) throw DivergenceError("dane: iterate is not finite");
    }
  } catch (const std::exception& e) {
    result.failure = e.what();
  }
  result.trace = std::move(recorder.trace());
  result.w = std::move(w);
  return result;
}

std::vector<AgdConfig> agd_grid(const AgdConfig& base, std::span<const double> steps,
                                std::span<const double> momenta) {
  std::vector<AgdConfig> out;
  for (double a : steps)
    for (double b : momenta) {
      AgdConfig c = base;
      c.step_alpha = a;
      c.momentum_beta = b;
      out.push_back(c);
    }
  return out;
}

}  // namespace giant
