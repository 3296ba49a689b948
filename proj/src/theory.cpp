#include "giant/theory.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "giant/baselines.hpp"
#include "giant/comms.hpp"
#include "giant/data_io.hpp"
#include "giant/driver.hpp"
#include "giant/error.hpp"
#include "giant/rng.hpp"
#include "giant/synthetic.hpp"

namespace giant {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

DenseMatrix gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  DenseMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (double& x : g.row(i)) x = normal(rng);
  return g;
}

Vec gaussian_vec(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  Vec v(n);
  for (double& x : v) x = normal(rng);
  return v;
}

LinearOperator dense_op(const DenseMatrix& h) {
  return [&h](std::span<const double> v) { return multiply(h, v); };
}

double h_norm(const DenseMatrix& h, std::span<const double> v) {
  return std::sqrt(std::max(0.0, dot(v, multiply(h, v))));
}

DenseMatrix hessian_from_rows(const DenseMatrix& rows, const Regularizer& reg) {
  DenseMatrix h = gram(rows);
  reg.add_to(h);
  return h;
}

double condition_number(const DenseMatrix& h) { return spd_eigen_range(h).condition(); }

// Successive error ratios of a trace while the error stays above floor * e_0.
struct Contraction {
  double max_ratio = 0.0;
  std::size_t steps = 0;
  std::size_t iterations_to = std::numeric_limits<std::size_t>::max();
};

Contraction contraction(const std::vector<IterationTrace>& trace, double floor, double target) {
  Contraction c;
  if (trace.empty()) return c;
  const double e0 = trace.front().error_norm;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    if (trace[t].error_norm <= target * e0 && c.iterations_to == std::numeric_limits<std::size_t>::max())
      c.iterations_to = t;
    if (t + 1 >= trace.size() || trace[t].error_norm <= floor * e0) continue;
    const double r = trace[t + 1].error_norm / trace[t].error_norm;
    c.max_ratio = std::max(c.max_ratio, r);
    ++c.steps;
  }
  return c;
}

struct RidgeInstance {
  ObjectiveSpec spec;
  LabeledDataset data;
  std::vector<WorkerShard> shards;
  Vec wstar;
  double kappa = 0.0;
  SketchMeasurement sketch;
};

RidgeInstance ridge_instance(const TheorySuiteConfig& config) {
  GeneratorSpec g;
  g.loss = LossKind::quadratic;
  g.n = config.ridge_n;
  g.d = config.ridge_d;
  g.kappa = config.ridge_kappa;
  g.gamma = config.ridge_gamma;
  RidgeInstance r;
  r.spec = ObjectiveSpec{LossKind::quadratic, Regularizer::scaled_identity(config.ridge_gamma)};
  r.data = generate_synthetic(g, derive_seed(config.seed, "ridge"));
  r.shards = partition_shards(r.data, config.ridge_m, derive_seed(config.seed, "ridge.partition"));
  r.wstar = solve_reference(r.spec, r.data);
  const Vec w0(g.d, 0.0);
  r.kappa = condition_number(materialize_hessian(r.spec, r.data, w0));
  const std::vector<SamplingMatrixView> views = shard_views(r.shards);
  r.sketch = measure_sketch(scaled_rows(r.spec, r.data, w0), r.spec.reg, views);
  return r;
}

RunResult run_exact_giant(const RidgeInstance& r, std::size_t iterations, const Vec& w0,
                          std::optional<CgSettings> cg) {
  Fabric fabric(r.shards.size());
  GiantConfig cfg;
  cfg.max_iterations = iterations;
  cfg.line_search.enabled = false;
  cfg.stop_tol = 0.0;
  cfg.local_solve = cg ? LocalSolve::cg : LocalSolve::direct;
  cfg.cg = cg;
  return run_giant(r.spec, r.data, r.shards, fabric, cfg, w0, std::span<const double>(r.wstar));
}

}  // namespace

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "PASS";
    case CheckStatus::fail:
      return "FAIL";
    case CheckStatus::skip:
      return "SKIP";
  }
  return "?";
}

double CheckResult::value(const std::string& key) const {
  for (const auto& [k, v] : measured)
    if (k == key) return v;
  return kNaN;
}

std::string format_check(const CheckResult& check) {
  std::ostringstream out;
  out << check.name << ' ' << to_string(check.status);
  out << std::setprecision(9);
  for (const auto& [k, v] : check.measured) out << ' ' << k << '=' << v;
  if (!check.note.empty()) out << " # " << check.note;
  return out.str();
}

void write_report(std::ostream& out, std::span<const CheckResult> checks) {
  for (const CheckResult& c : checks) out << format_check(c) << '\n';
}

std::vector<SamplingMatrixView> shard_views(std::span<const WorkerShard> shards) {
  std::vector<SamplingMatrixView> views;
  views.reserve(shards.size());
  for (const WorkerShard& s : shards) views.push_back(partition_view(s.total_rows, s.local_indices));
  return views;
}

SketchMeasurement measure_sketch(const DenseMatrix& a_t, const Regularizer& reg,
                                 std::span<const SamplingMatrixView> views, double epsilon0) {
  SketchMeasurement out;
  out.deviation = spectral_deviation(thin_orthonormal_basis(a_t), views);
  out.eta = out.deviation.max_per_view();
  const double m = static_cast<double>(views.size());
  out.assumption_holds = out.eta < 1.0 && out.deviation.pooled <= out.eta / std::sqrt(m);
  if (out.eta > 0.0 && out.eta < 1.0) {
    out.alpha = alpha_bound(a_t, reg, out.eta, views.size(), epsilon0);
  } else {
    out.alpha.eta = out.eta;
    out.alpha.m = views.size();
    out.alpha.epsilon0 = epsilon0;
  }
  return out;
}

DenseMatrix random_spd_matrix(std::size_t d, double kappa, std::uint64_t seed) {
  const DenseMatrix q = thin_orthonormal_basis(gaussian(d, d, seed));
  if (q.cols() != d) throw NumericBreakdown("random_spd_matrix: degenerate basis");
  DenseMatrix h(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    const double lambda =
        d == 1 ? 1.0 : std::pow(kappa, static_cast<double>(k) / static_cast<double>(d - 1));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) h(i, j) += lambda * q(i, k) * q(j, k);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) h(i, j) = h(j, i) = 0.5 * (h(i, j) + h(j, i));
  return h;
}

std::pair<CheckResult, CheckResult> check_lemma1_lemma2(const TheorySuiteConfig& config) {
  CheckResult l1{"lemma1"}, l2{"lemma2"};
  const double m = static_cast<double>(config.lemma_m);
  const std::size_t s = config.lemma_n / config.lemma_m;
  const double eps0 = config.lemma2_epsilon0;

  if (config.forced_eta && !(*config.forced_eta < 1.0)) {
    l1.note = l2.note = "vacuous: forced eta is not below 1";
    l1.add("forced_eta", *config.forced_eta);
    l2.add("forced_eta", *config.forced_eta);
    return {l1, l2};
  }

  std::size_t qualifying = 0, ok1 = 0, ok2 = 0;
  double worst1 = 0.0, worst2 = 0.0, eta_sum = 0.0, alpha_sum = 0.0, alpha2_sum = 0.0;
  for (std::size_t trial = 0; trial < config.lemma_trials; ++trial) {
    GeneratorSpec g;
    g.n = config.lemma_n;
    g.d = config.lemma_d;
    g.kappa = config.lemma_kappa;
    g.gamma = config.lemma_gamma;
    const LabeledDataset data = generate_synthetic(g, derive_seed(config.seed, "lemma.data", trial));
    const ObjectiveSpec spec{LossKind::quadratic, Regularizer::scaled_identity(g.gamma)};
    const Vec w0(g.d, 0.0);
    const DenseMatrix a = scaled_rows(spec, data, w0);

    std::vector<SamplingMatrixView> views;
    for (std::size_t i = 0; i < config.lemma_m; ++i)
      views.push_back(uniform_sample(g.n, s, derive_seed(config.seed, "lemma.sketch", trial * config.lemma_m + i)));
    SketchMeasurement sk = measure_sketch(a, spec.reg, views);
    double eta = sk.eta;
    if (config.forced_eta) {
      eta = *config.forced_eta;
      if (sk.eta > eta || sk.deviation.pooled > eta / std::sqrt(m)) continue;
    } else if (!sk.assumption_holds) {
      continue;
    }
    ++qualifying;
    const AlphaConstants c1 = alpha_bound(a, spec.reg, eta, config.lemma_m, 0.0);
    const AlphaConstants c2 = alpha_bound(a, spec.reg, eta, config.lemma_m, eps0);
    eta_sum += eta;
    alpha_sum += c1.alpha();
    alpha2_sum += c2.alpha();

    const DenseMatrix h = hessian_from_rows(a, spec.reg);
    const Vec grad = gradient(spec, data, w0);
    const Vec pstar = direct_spd_solve(h, grad);
    const double phi_star = phi_value(dense_op(h), grad, pstar);

    Vec exact(g.d, 0.0), inexact(g.d, 0.0);
    for (std::size_t i = 0; i < config.lemma_m; ++i) {
      const DenseMatrix hi = hessian_from_rows(views[i].apply(a), spec.reg);
      const Vec pi = direct_spd_solve(hi, grad);
      const Vec z = gaussian_vec(g.d, derive_seed(config.seed, "lemma.perturb", trial * config.lemma_m + i));
      Vec pi_prime = pi;
      axpy(eps0 * h_norm(hi, pi) / h_norm(hi, z), z, pi_prime);
      axpy(1.0 / m, pi, exact);
      axpy(1.0 / m, pi_prime, inexact);
    }
    const double tol = 1e-10 * std::abs(phi_star);
    const double phi1 = phi_value(dense_op(h), grad, exact);
    const double phi2 = phi_value(dense_op(h), grad, inexact);
    const double a1 = c1.alpha(), a2 = c2.alpha();
    // Normalized gaps (phi - phi*) / |phi*| against alpha^2.
    const double gap1 = (phi1 - phi_star) / std::abs(phi_star);
    const double gap2 = (phi2 - phi_star) / std::abs(phi_star);
    worst1 = std::max(worst1, gap1 / (a1 * a1));
    worst2 = std::max(worst2, gap2 / (a2 * a2));
    if (phi1 >= phi_star - tol && phi1 <= (1.0 - a1 * a1) * phi_star + tol) ++ok1;
    if (phi2 >= phi_star - tol && phi2 <= (1.0 - a2 * a2) * phi_star + tol) ++ok2;
  }

  const double q = static_cast<double>(qualifying);
  for (CheckResult* c : {&l1, &l2}) {
    c->add("instances", static_cast<double>(config.lemma_trials));
    c->add("qualifying", q);
    c->add("mean_eta", qualifying ? eta_sum / q : kNaN);
  }
  l1.add("mean_alpha", qualifying ? alpha_sum / q : kNaN);
  l1.add("holds", static_cast<double>(ok1));
  l1.add("max_gap_over_alpha2", worst1);
  l2.add("epsilon0", eps0);
  l2.add("mean_alpha", qualifying ? alpha2_sum / q : kNaN);
  l2.add("holds", static_cast<double>(ok2));
  l2.add("max_gap_over_alpha2", worst2);
  if (qualifying == 0) {
    l1.note = l2.note = "no instance satisfied the sketch assumption";
  } else {
    l1.status = ok1 == qualifying ? CheckStatus::pass : CheckStatus::fail;
    l2.status = ok2 == qualifying ? CheckStatus::pass : CheckStatus::fail;
  }
  return {l1, l2};
}

CheckResult check_lemma3(const TheorySuiteConfig& config) {
  CheckResult r{"lemma3"};
  const DenseMatrix u =
      thin_orthonormal_basis(gaussian(config.lemma3_n, config.lemma3_d, derive_seed(config.seed, "lemma3.data")));
  const double mu = row_coherence(u);
  const std::size_t s =
      lemma3_sample_size(mu, config.lemma3_d, config.lemma3_m, config.lemma3_eta, config.lemma3_delta);
  const double pooled_limit = config.lemma3_eta / std::sqrt(static_cast<double>(config.lemma3_m));
  std::size_t failures = 0;
  double worst_view = 0.0, worst_pooled = 0.0;
  for (std::size_t t = 0; t < config.lemma3_trials; ++t) {
    std::vector<SamplingMatrixView> views;
    for (std::size_t i = 0; i < config.lemma3_m; ++i)
      views.push_back(uniform_sample(config.lemma3_n, s, derive_seed(config.seed, "lemma3.sketch", t * config.lemma3_m + i)));
    const DeviationReport dev = spectral_deviation(u, views);
    worst_view = std::max(worst_view, dev.max_per_view());
    worst_pooled = std::max(worst_pooled, dev.pooled);
    if (dev.max_per_view() > config.lemma3_eta || dev.pooled > pooled_limit) ++failures;
  }
  const double fraction = static_cast<double>(failures) / static_cast<double>(config.lemma3_trials);
  r.add("mu", mu);
  r.add("s", static_cast<double>(s));
  r.add("failure_fraction", fraction);
  r.add("allowed", 2.0 * config.lemma3_delta);
  r.add("max_per_view", worst_view);
  r.add("max_pooled", worst_pooled);
  r.status = fraction <= 2.0 * config.lemma3_delta ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

CheckResult check_prop1(const TheorySuiteConfig& config) {
  CheckResult r{"prop1"};
  const double eps0 = config.prop1_epsilon0;
  std::size_t total = 0, ok = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < config.prop1_kappas.size(); ++k) {
    const double kappa = config.prop1_kappas[k];
    const CgSettings cg = CgSettings::budget(kappa, eps0);
    r.add("q_kappa_" + std::to_string(static_cast<long long>(kappa)), static_cast<double>(cg.max_iter));
    for (std::size_t t = 0; t < config.prop1_trials; ++t) {
      const std::uint64_t idx = k * config.prop1_trials + t;
      const DenseMatrix h = random_spd_matrix(config.prop1_d, kappa, derive_seed(config.seed, "prop1.h", idx));
      const Vec g = gaussian_vec(config.prop1_d, derive_seed(config.seed, "prop1.g", idx));
      const Vec exact = direct_spd_solve(h, g);
      const Vec approx = cg_solve(dense_op(h), g, cg.max_iter, cg.rel_tol).solution;
      const double ratio = h_norm(h, subtract(approx, exact)) / h_norm(h, exact);
      worst = std::max(worst, ratio);
      ++total;
      if (ratio <= 0.5 * eps0) ++ok;
    }
  }
  r.add("trials", static_cast<double>(total));
  r.add("holds", static_cast<double>(ok));
  r.add("max_relative_error", worst);
  r.add("bound", 0.5 * eps0);
  r.status = ok == total ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

CheckResult check_phi_translation(const TheorySuiteConfig& config) {
  CheckResult r{"phi_translation"};
  double worst = 0.0;
  for (std::size_t t = 0; t < config.phi_trials; ++t) {
    const DenseMatrix h = random_spd_matrix(config.phi_d, 1e3, derive_seed(config.seed, "phi.h", t));
    const Vec g = gaussian_vec(config.phi_d, derive_seed(config.seed, "phi.g", t));
    const Vec p = gaussian_vec(config.phi_d, derive_seed(config.seed, "phi.p", t));
    const Vec pstar = direct_spd_solve(h, g);
    const double lhs = phi_value(dense_op(h), g, p) - phi_value(dense_op(h), g, pstar);
    const double e = h_norm(h, subtract(p, pstar));
    const double rhs = 0.5 * e * e;
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rhs));
  }
  r.add("trials", static_cast<double>(config.phi_trials));
  r.add("max_relative_error", worst);
  r.status = worst <= 1e-10 ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

CheckResult check_theorem1(const TheorySuiteConfig& config) {
  CheckResult r{"theorem1"};
  const RidgeInstance inst = ridge_instance(config);
  const double alpha = inst.sketch.alpha.alpha();
  r.add("eta", inst.sketch.eta);
  r.add("pooled", inst.sketch.deviation.pooled);
  r.add("vartheta", inst.sketch.alpha.vartheta);
  r.add("kappa", inst.kappa);
  r.add("alpha_formula", alpha);
  if (!inst.sketch.assumption_holds || !(alpha < 1.0)) {
    r.note = "vacuous: sketch assumption fails or alpha >= 1";
    return r;
  }
  const RunResult run = run_exact_giant(inst, config.ridge_max_iterations, Vec(config.ridge_d, 0.0), std::nullopt);
  if (!run.ok()) {
    r.status = CheckStatus::fail;
    r.note = run.failure;
    return r;
  }
  const Contraction c = contraction(run.trace, 1e-12, 1e-10);
  const double bound_iters = std::ceil(std::log(1e-10 / std::sqrt(inst.kappa)) / std::log(alpha)) + 1.0;
  r.add("alpha_observed", c.max_ratio);
  r.add("checked_steps", static_cast<double>(c.steps));
  r.add("iterations_to_1e-10", c.iterations_to == std::numeric_limits<std::size_t>::max()
                                   ? kNaN
                                   : static_cast<double>(c.iterations_to));
  r.add("iteration_bound", bound_iters);
  const bool contraction_ok = c.steps > 0 && c.max_ratio <= (1.0 + config.theorem1_slack) * alpha;
  const bool count_ok = c.iterations_to != std::numeric_limits<std::size_t>::max() &&
                        static_cast<double>(c.iterations_to) <= bound_iters;
  r.status = contraction_ok && count_ok ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

CheckResult check_theorem3(const TheorySuiteConfig& config) {
  CheckResult r{"theorem3"};
  const RidgeInstance inst = ridge_instance(config);
  const double alpha = inst.sketch.alpha.alpha();
  const double eta = inst.sketch.eta;
  r.add("eta", eta);
  r.add("alpha_formula", alpha);
  if (!inst.sketch.assumption_holds || !(alpha > 0.0 && alpha < 1.0)) {
    r.note = "vacuous: sketch assumption fails or alpha >= 1";
    return r;
  }
  const double eps0 = alpha;
  const Vec w0(config.ridge_d, 0.0);
  double kappa_tilde = 1.0;
  for (const WorkerShard& s : inst.shards)
    kappa_tilde = std::max(kappa_tilde, condition_number(local_hessian(s, inst.spec, w0)));
  const CgSettings cg = CgSettings::budget(kappa_tilde, eps0);
  const double bound = (alpha + eps0 / (1.0 - eta)) * (1.0 + config.theorem3_margin);
  r.add("epsilon0", eps0);
  r.add("kappa_tilde", kappa_tilde);
  r.add("cg_budget", static_cast<double>(cg.max_iter));
  r.add("factor_bound", bound);
  const RunResult run = run_exact_giant(inst, config.ridge_max_iterations, w0, cg);
  if (!run.ok()) {
    r.status = CheckStatus::fail;
    r.note = run.failure;
    return r;
  }
  const Contraction c = contraction(run.trace, 1e-12, 1e-10);
  r.add("alpha_observed", c.max_ratio);
  r.add("checked_steps", static_cast<double>(c.steps));
  r.status = c.steps > 0 && c.max_ratio <= bound ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

CheckResult check_theorem2(const TheorySuiteConfig& config) {
  CheckResult r{"theorem2"};
  GeneratorSpec g;
  g.loss = LossKind::logistic;
  g.n = config.logistic_n;
  g.d = config.logistic_d;
  g.gamma = config.logistic_gamma;
  const ObjectiveSpec spec{LossKind::logistic, Regularizer::scaled_identity(config.logistic_gamma)};
  const LabeledDataset data = generate_synthetic(g, derive_seed(config.seed, "logistic"));
  const std::vector<WorkerShard> shards =
      partition_shards(data, config.logistic_m, derive_seed(config.seed, "logistic.partition"));
  const Vec wstar = solve_reference(spec, data);
  const double kappa = condition_number(materialize_hessian(spec, data, wstar));
  const std::vector<SamplingMatrixView> views = shard_views(shards);
  const SketchMeasurement sk = measure_sketch(scaled_rows(spec, data, wstar), spec.reg, views);
  const double alpha = sk.alpha.alpha();
  const double factor = 2.0 * alpha * std::sqrt(kappa) * (1.0 + config.theorem2_margin);
  r.add("eta", sk.eta);
  r.add("alpha_formula", alpha);
  r.add("kappa_star", kappa);
  r.add("factor_bound", factor);
  if (!sk.assumption_holds || !(factor < 1.0)) {
    r.note = "vacuous: sketch assumption fails or the linear factor is not below 1";
    return r;
  }

  Vec w0 = gaussian_vec(g.d, derive_seed(config.seed, "logistic.offset"));
  const double scale = config.logistic_offset / norm2(w0);
  for (double& x : w0) x *= scale;
  axpy(1.0, wstar, w0);

  Fabric fabric(shards.size());
  GiantConfig cfg;
  cfg.max_iterations = config.logistic_steps + 1;
  cfg.line_search.enabled = false;
  cfg.local_solve = LocalSolve::direct;
  cfg.stop_tol = 0.0;
  const RunResult run = run_giant(spec, data, shards, fabric, cfg, w0, std::span<const double>(wstar));
  if (!run.ok()) {
    r.status = CheckStatus::fail;
    r.note = run.failure;
    return r;
  }
  double worst = 0.0;
  bool monotone = true;
  std::size_t steps = 0;
  for (std::size_t t = 0; t + 1 < run.trace.size() && steps < config.logistic_steps; ++t, ++steps) {
    const double ratio = run.trace[t + 1].error_norm / run.trace[t].error_norm;
    worst = std::max(worst, ratio);
    if (!(ratio < 1.0)) monotone = false;
  }
  r.add("alpha_observed", worst);
  r.add("steps", static_cast<double>(steps));
  r.add("final_error", run.trace.empty() ? kNaN : run.trace.back().error_norm);
  r.status = monotone && steps >= config.logistic_steps && worst <= factor ? CheckStatus::pass
                                                                           : CheckStatus::fail;
  return r;
}

CheckResult check_dane_equivalence(const TheorySuiteConfig& config) {
  CheckResult r{"dane_equivalence"};
  double worst = 0.0;
  bool failed = false;
  for (std::size_t inst = 0; inst < config.dane_instances && !failed; ++inst) {
    GeneratorSpec g;
    g.n = config.dane_n;
    g.d = config.dane_d;
    g.kappa = 100.0;
    const ObjectiveSpec spec{LossKind::quadratic, Regularizer::scaled_identity(g.gamma)};
    const LabeledDataset data = generate_synthetic(g, derive_seed(config.seed, "dane.data", inst));
    const std::vector<WorkerShard> shards =
        partition_shards(data, config.dane_m, derive_seed(config.seed, "dane.partition", inst));
    const Vec w0(g.d, 0.0);
    for (std::size_t k = 1; k <= config.dane_iterations; ++k) {
      Fabric fg(shards.size()), fd(shards.size());
      GiantConfig gc;
      gc.max_iterations = k;
      gc.line_search.enabled = false;
      gc.local_solve = LocalSolve::direct;
      gc.stop_tol = 0.0;
      DaneConfig dc;
      dc.max_iterations = k;
      dc.line_search.enabled = false;
      dc.local_solver = DaneLocalSolver::newton;
      dc.newton_linear_solve = LocalSolve::direct;
      dc.stop_tol = 0.0;
      const RunResult a = run_giant(spec, data, shards, fg, gc, w0);
      const RunResult b = run_dane(spec, data, shards, fd, dc, w0);
      if (!a.ok() || !b.ok()) {
        failed = true;
        r.note = a.ok() ? b.failure : a.failure;
        break;
      }
      worst = std::max(worst, norm2(subtract(a.w, b.w)) / std::max(1.0, norm2(a.w)));
    }
  }
  r.add("instances", static_cast<double>(config.dane_instances));
  r.add("iterations", static_cast<double>(config.dane_iterations));
  r.add("max_relative_gap", worst);
  r.status = !failed && worst <= config.dane_tol ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

std::vector<std::string> theory_check_names() {
  return {"lemma1",   "lemma2",   "lemma3",   "prop1",           "phi_translation",
          "theorem1", "theorem2", "theorem3", "dane_equivalence"};
}

std::vector<CheckResult> run_theory_suite(const TheorySuiteConfig& config) {
  const std::vector<std::string> all = theory_check_names();
  const std::vector<std::string> selected = config.checks.empty() ? all : config.checks;
  for (const std::string& name : selected)
    if (std::find(all.begin(), all.end(), name) == all.end())
      throw ConfigError("unknown theory check: " + name);
  const auto wanted = [&](const char* name) {
    return std::find(selected.begin(), selected.end(), name) != selected.end();
  };

  std::vector<CheckResult> out;
  if (wanted("lemma1") || wanted("lemma2")) {
    auto [l1, l2] = check_lemma1_lemma2(config);
    if (wanted("lemma1")) out.push_back(std::move(l1));
    if (wanted("lemma2")) out.push_back(std::move(l2));
  }
  if (wanted("lemma3")) out.push_back(check_lemma3(config));
  if (wanted("prop1")) out.push_back(check_prop1(config));
  if (wanted("phi_translation")) out.push_back(check_phi_translation(config));
  if (wanted("theorem1")) out.push_back(check_theorem1(config));
  if (wanted("theorem2")) out.push_back(check_theorem2(config));
  if (wanted("theorem3")) out.push_back(check_theorem3(config));
  if (wanted("dane_equivalence")) out.push_back(check_dane_equivalence(config));
  return out;
}

}  // namespace giant
