#include "giant/experiment.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <map>
#include <sstream>

#include "giant/error.hpp"
#include "giant/rng.hpp"

namespace giant {

namespace {

namespace fs = std::filesystem;

YAML::Node parse_yaml(const std::string& text) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("invalid YAML: ") + e.what());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void require_map(const YAML::Node& node, const std::string& where) {
  if (!node.IsMap()) throw ConfigError(where + ": expected a mapping");
}

void check_keys(const YAML::Node& node, const std::string& where,
                std::initializer_list<const char*> allowed) {
  require_map(node, where);
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <class T>
T as(const YAML::Node& node, const std::string& where) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(where + ": value has the wrong type");
  }
}

std::string qualify(const std::string& where, const char* key) {
  return where.empty() ? key : where + "." + key;
}

template <class T>
void read(const YAML::Node& parent, const char* key, T& out, const std::string& where) {
  if (const YAML::Node v = parent[key]) out = as<T>(v, qualify(where, key));
}

LossKind parse_loss(const std::string& s) {
  if (s == "quadratic") return LossKind::quadratic;
  if (s == "logistic") return LossKind::logistic;
  throw ConfigError("unknown loss '" + s + "'");
}

LocalSolve parse_local_solve(const std::string& s) {
  if (s == "cg") return LocalSolve::cg;
  if (s == "direct") return LocalSolve::direct;
  throw ConfigError("unknown local solve '" + s + "'");
}

void read_line_search(const YAML::Node& parent, LineSearchSettings& ls, const std::string& where) {
  const YAML::Node n = parent["line_search"];
  if (!n) return;
  const std::string w = qualify(where, "line_search");
  check_keys(n, w, {"enabled", "armijo_c", "candidates"});
  read(n, "enabled", ls.enabled, w);
  read(n, "armijo_c", ls.armijo_c, w);
  read(n, "candidates", ls.candidates, w);
  ls.validate();
}

void read_generator(const YAML::Node& n, GeneratorSpec& g, const std::string& where) {
  check_keys(n, where, {"loss", "n", "d", "kappa", "gamma", "noise"});
  if (n["loss"]) g.loss = parse_loss(as<std::string>(n["loss"], where + ".loss"));
  read(n, "n", g.n, where);
  read(n, "d", g.d, where);
  read(n, "kappa", g.kappa, where);
  read(n, "gamma", g.gamma, where);
  read(n, "noise", g.noise, where);
}

void read_dataset(const YAML::Node& n, ExperimentConfig& c, const fs::path& base_dir) {
  const std::string w = "dataset";
  check_keys(n, w, {"libsvm", "synthetic", "train_fraction", "rff", "augment"});
  if (n["libsvm"] && n["synthetic"]) throw ConfigError("dataset: give either libsvm or synthetic");
  if (!n["libsvm"] && !n["synthetic"]) throw ConfigError("dataset: needs libsvm or synthetic");
  DatasetSource& d = c.dataset;
  if (n["libsvm"]) {
    fs::path p = as<std::string>(n["libsvm"], w + ".libsvm");
    d.libsvm = p.is_relative() ? base_dir / p : p;
  } else {
    d.synthetic.loss = c.loss;
    d.synthetic.gamma = c.gamma;
    read_generator(n["synthetic"], d.synthetic, w + ".synthetic");
    if (d.synthetic.loss != c.loss) throw ConfigError("dataset.synthetic.loss must match loss");
  }
  if (n["train_fraction"]) d.train_fraction = as<double>(n["train_fraction"], w + ".train_fraction");
  if (const YAML::Node r = n["rff"]) {
    const std::string rw = w + ".rff";
    check_keys(r, rw, {"dim", "sigma", "pair_budget"});
    RffConfig rc;
    rc.sigma = 0.0;
    read(r, "dim", rc.target_dim, rw);
    if (r["sigma"] && !(r["sigma"].IsScalar() && r["sigma"].Scalar() == "auto"))
      rc.sigma = as<double>(r["sigma"], rw + ".sigma");
    read(r, "pair_budget", d.rff_pair_budget, rw);
    d.rff = rc;
  }
  if (const YAML::Node a = n["augment"]) {
    const std::string aw = w + ".augment";
    check_keys(a, aw, {"factor", "noise"});
    read(a, "factor", d.augment_factor, aw);
    read(a, "noise", d.augment_noise, aw);
  }
}

void read_giant(const YAML::Node& n, ExperimentConfig& c) {
  const std::string w = "giant";
  check_keys(n, w, {"max_iterations", "stop_tol", "local_solve", "cg", "line_search"});
  read(n, "max_iterations", c.giant.max_iterations, w);
  read(n, "stop_tol", c.giant.stop_tol, w);
  if (n["local_solve"]) c.giant.local_solve = parse_local_solve(as<std::string>(n["local_solve"], w + ".local_solve"));
  if (const YAML::Node cg = n["cg"]) {
    const std::string cw = w + ".cg";
    check_keys(cg, cw, {"max_iter", "rel_tol", "kappa", "epsilon0"});
    if (cg["kappa"]) {
      if (cg["max_iter"] || cg["rel_tol"]) throw ConfigError(cw + ": kappa excludes max_iter and rel_tol");
      c.giant_cg_kappa = as<double>(cg["kappa"], cw + ".kappa");
      read(cg, "epsilon0", c.giant_cg_epsilon0, cw);
    } else {
      CgSettings s;
      read(cg, "max_iter", s.max_iter, cw);
      read(cg, "rel_tol", s.rel_tol, cw);
      c.giant.cg = s;
    }
  }
  read_line_search(n, c.giant.line_search, w);
}

void read_agd(const YAML::Node& n, ExperimentConfig& c) {
  const std::string w = "agd";
  check_keys(n, w, {"step", "momentum", "max_iterations", "stop_tol", "grid"});
  read(n, "step", c.agd.step_alpha, w);
  read(n, "momentum", c.agd.momentum_beta, w);
  read(n, "max_iterations", c.agd.max_iterations, w);
  read(n, "stop_tol", c.agd.stop_tol, w);
  if (const YAML::Node g = n["grid"]) {
    check_keys(g, w + ".grid", {"steps", "momenta"});
    AgdGrid grid;
    read(g, "steps", grid.steps, w + ".grid");
    read(g, "momenta", grid.momenta, w + ".grid");
    if (grid.steps.empty() || grid.momenta.empty()) throw ConfigError("agd.grid needs steps and momenta");
    c.agd_grid = grid;
  }
}

void read_lbfgs(const YAML::Node& n, ExperimentConfig& c) {
  const std::string w = "lbfgs";
  check_keys(n, w, {"history", "max_iterations", "stop_tol", "line_search"});
  read(n, "history", c.lbfgs.history_size, w);
  read(n, "max_iterations", c.lbfgs.max_iterations, w);
  read(n, "stop_tol", c.lbfgs.stop_tol, w);
  read_line_search(n, c.lbfgs.line_search, w);
}

void read_dane(const YAML::Node& n, ExperimentConfig& c) {
  const std::string w = "dane";
  check_keys(n, w, {"eta", "local_solver", "linear_solve", "svrg", "max_iterations", "stop_tol", "line_search"});
  read(n, "eta", c.dane.dane_step_eta, w);
  if (n["local_solver"]) {
    const std::string s = as<std::string>(n["local_solver"], w + ".local_solver");
    if (s == "svrg") c.dane.local_solver = DaneLocalSolver::svrg;
    else if (s == "newton") c.dane.local_solver = DaneLocalSolver::newton;
    else throw ConfigError("unknown dane local solver '" + s + "'");
  }
  if (n["linear_solve"]) c.dane.newton_linear_solve = parse_local_solve(as<std::string>(n["linear_solve"], w + ".linear_solve"));
  if (const YAML::Node s = n["svrg"]) {
    const std::string sw = w + ".svrg";
    check_keys(s, sw, {"step", "epochs", "inner"});
    read(s, "step", c.dane.svrg.step, sw);
    read(s, "epochs", c.dane.svrg.max_epochs, sw);
    read(s, "inner", c.dane.svrg.inner_loop_len, sw);
  }
  read(n, "max_iterations", c.dane.max_iterations, w);
  read(n, "stop_tol", c.dane.stop_tol, w);
  read_line_search(n, c.dane.line_search, w);
}

IterationCost operator+(IterationCost a, const IterationCost& b) {
  a.rounds += b.rounds;
  a.d2w_words += b.d2w_words;
  a.w2d_words += b.w2d_words;
  return a;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double test_metric(const ObjectiveSpec& spec, const LabeledDataset& test, const Vec& w) {
  const Vec margins = multiply(test.features, w);
  double acc = 0.0;
  for (std::size_t j = 0; j < test.n(); ++j) {
    if (spec.loss == LossKind::logistic) {
      acc += (margins[j] >= 0.0 ? 1.0 : -1.0) != test.labels[j] ? 1.0 : 0.0;
    } else {
      const double r = margins[j] - test.labels[j];
      acc += r * r;
    }
  }
  return acc / static_cast<double>(test.n());
}

}  // namespace

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::giant:
      return "giant";
    case SolverKind::agd:
      return "agd";
    case SolverKind::lbfgs:
      return "lbfgs";
    case SolverKind::dane:
      return "dane";
  }
  return "?";
}

ExperimentConfig parse_experiment_config(const std::string& text, const fs::path& base_dir) {
  const YAML::Node root = parse_yaml(text);
  check_keys(root, "config",
             {"solver", "seed", "workers", "loss", "gamma", "execution", "reference", "record_wall_time",
              "dataset", "output", "giant", "agd", "lbfgs", "dane"});
  ExperimentConfig c;
  if (!root["solver"]) throw ConfigError("config: solver is required");
  const std::string solver = as<std::string>(root["solver"], "solver");
  if (solver == "giant") c.solver = SolverKind::giant;
  else if (solver == "agd") c.solver = SolverKind::agd;
  else if (solver == "lbfgs") c.solver = SolverKind::lbfgs;
  else if (solver == "dane") c.solver = SolverKind::dane;
  else throw ConfigError("unknown solver '" + solver + "'");

  read(root, "seed", c.seed, "");
  read(root, "workers", c.workers, "");
  if (c.workers == 0) throw ConfigError("workers must be at least 1");
  if (root["loss"]) c.loss = parse_loss(as<std::string>(root["loss"], "loss"));
  read(root, "gamma", c.gamma, "");
  if (!(c.gamma >= 0.0)) throw ConfigError("gamma must be non-negative");
  if (root["execution"]) {
    const std::string e = as<std::string>(root["execution"], "execution");
    if (e == "sequential") c.execution = ExecutionMode::sequential;
    else if (e == "parallel") c.execution = ExecutionMode::parallel;
    else throw ConfigError("unknown execution mode '" + e + "'");
  }
  read(root, "reference", c.reference, "");
  read(root, "record_wall_time", c.record_wall_time, "");
  if (root["output"]) c.output = fs::path(as<std::string>(root["output"], "output"));

  if (!root["dataset"]) throw ConfigError("config: dataset is required");
  read_dataset(root["dataset"], c, base_dir);
  if (root["giant"]) read_giant(root["giant"], c);
  if (root["agd"]) read_agd(root["agd"], c);
  if (root["lbfgs"]) read_lbfgs(root["lbfgs"], c);
  if (root["dane"]) read_dane(root["dane"], c);
  return c;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  return parse_experiment_config(read_file(path), path.parent_path());
}

PreparedData prepare_dataset(const ExperimentConfig& config) {
  const DatasetSource& src = config.dataset;
  LabeledDataset data;
  if (src.libsvm) {
    LibsvmOptions opts;
    opts.normalize_binary = config.loss == LossKind::logistic;
    data = load_libsvm(*src.libsvm, opts);
  } else {
    data = generate_synthetic(src.synthetic, derive_seed(config.seed, "data"));
  }
  if (src.augment_factor != 1 || src.augment_noise != 0.0)
    data = augment_replicate(data, src.augment_factor, src.augment_noise, derive_seed(config.seed, "augment"));

  PreparedData out;
  if (src.train_fraction) {
    auto [train, test] = train_test_split(data, *src.train_fraction, derive_seed(config.seed, "split"));
    out.train = std::move(train);
    out.test = std::move(test);
  } else {
    out.train = std::move(data);
  }
  if (src.rff) {
    RffConfig rc = *src.rff;
    rc.seed = derive_seed(config.seed, "rff");
    if (!(rc.sigma > 0.0))
      rc.sigma = estimate_sigma(out.train.features, src.rff_pair_budget, derive_seed(config.seed, "rff.sigma"));
    out.train.features = rff_map(out.train.features, rc);
    if (out.test) out.test->features = rff_map(out.test->features, rc);
  }
  return out;
}

IterationCost expected_stop_cost(const ExperimentConfig& config, std::size_t d) {
  const std::uint64_t dm = d * config.workers;
  return {2, dm, dm};
}

IterationCost expected_iteration_cost(const ExperimentConfig& config, std::size_t d) {
  const std::uint64_t m = config.workers;
  const std::uint64_t dm = d * m;
  const IterationCost grad = expected_stop_cost(config, d);
  const auto search = [&](const LineSearchSettings& ls) {
    return ls.enabled ? IterationCost{2, dm, (ls.candidates.size() + 1) * m} : IterationCost{};
  };
  switch (config.solver) {
    case SolverKind::agd:
      return grad;
    case SolverKind::lbfgs:
      return grad + search(config.lbfgs.line_search);
    case SolverKind::giant:
      return grad + IterationCost{2, dm, dm} + search(config.giant.line_search);
    case SolverKind::dane:
      return grad + IterationCost{2, dm, dm} + search(config.dane.line_search);
  }
  return {};
}

std::optional<std::string> audit_accounting(const ExperimentConfig& config, std::size_t d,
                                            const std::vector<IterationTrace>& trace, bool converged) {
  const IterationCost full = expected_iteration_cost(config, d);
  const IterationCost stop = expected_stop_cost(config, d);
  NetworkStats prev;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const NetworkStats& s = trace[t].stats;
    const bool stopped = converged && t + 1 == trace.size();
    const IterationCost& want = stopped ? stop : full;
    const IterationCost got{s.rounds - prev.rounds, s.driver_to_worker_words - prev.driver_to_worker_words,
                            s.worker_to_driver_words - prev.worker_to_driver_words};
    if (got.rounds != want.rounds || got.d2w_words != want.d2w_words || got.w2d_words != want.w2d_words) {
      std::ostringstream msg;
      msg << "iteration " << t << ": rounds/d2w/w2d = " << got.rounds << '/' << got.d2w_words << '/'
          << got.w2d_words << ", expected " << want.rounds << '/' << want.d2w_words << '/' << want.w2d_words;
      return msg.str();
    }
    prev = s;
  }
  return std::nullopt;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const PreparedData data = prepare_dataset(config);
  const LabeledDataset& train = data.train;
  const ObjectiveSpec spec{config.loss, Regularizer::scaled_identity(config.gamma)};
  validate(spec, train);
  const std::size_t d = train.d();

  CgSettings shard_cg;
  GiantConfig giant = config.giant;
  if (config.giant_cg_kappa) giant.cg = CgSettings::budget(*config.giant_cg_kappa, config.giant_cg_epsilon0);
  if (giant.cg) shard_cg = *giant.cg;
  giant.seed = derive_seed(config.seed, "giant");
  giant.record_wall_time = config.record_wall_time;
  const std::vector<WorkerShard> shards =
      partition_shards(train, config.workers, derive_seed(config.seed, "partition"), shard_cg);

  std::optional<Vec> wstar;
  if (config.reference) wstar = solve_reference(spec, train);
  std::optional<std::span<const double>> ref;
  if (wstar) ref = std::span<const double>(*wstar);
  const Vec w0(d, 0.0);

  ExperimentResult result;
  switch (config.solver) {
    case SolverKind::giant: {
      Fabric fabric(config.workers, config.execution);
      result.run = run_giant(spec, train, shards, fabric, giant, w0, ref);
      break;
    }
    case SolverKind::agd: {
      AgdConfig agd = config.agd;
      agd.record_wall_time = config.record_wall_time;
      const auto runner = [&](const AgdConfig& c) {
        Fabric fabric(config.workers, config.execution);
        return run_agd(spec, train, shards, fabric, c, w0, ref);
      };
      if (config.agd_grid) {
        GridSearchResult<AgdConfig> grid = grid_search<AgdConfig>(
            agd_grid(agd, config.agd_grid->steps, config.agd_grid->momenta), runner);
        result.tuned_agd = grid.configs[grid.best];
        result.run = std::move(grid.runs[grid.best]);
      } else {
        result.run = runner(agd);
      }
      break;
    }
    case SolverKind::lbfgs: {
      LbfgsConfig lbfgs = config.lbfgs;
      lbfgs.record_wall_time = config.record_wall_time;
      Fabric fabric(config.workers, config.execution);
      result.run = run_lbfgs(spec, train, shards, fabric, lbfgs, w0, ref);
      break;
    }
    case SolverKind::dane: {
      DaneConfig dane = config.dane;
      dane.seed = derive_seed(config.seed, "dane");
      dane.record_wall_time = config.record_wall_time;
      Fabric fabric(config.workers, config.execution);
      result.run = run_dane(spec, train, shards, fabric, dane, w0, ref);
      break;
    }
  }
  result.accounting_error = audit_accounting(config, d, result.run.trace, result.run.converged);
  if (data.test && result.run.ok()) result.test_metric = test_metric(spec, *data.test, result.run.w);
  return result;
}

void write_trace_csv(std::ostream& out, const std::vector<IterationTrace>& trace) {
  out << kTraceHeader << '\n';
  for (const IterationTrace& t : trace) {
    out << t.iteration << ',' << fmt(t.objective) << ',' << fmt(t.grad_norm) << ',' << fmt(t.error_norm) << ','
        << fmt(t.step_size) << ',' << t.stats.rounds << ',' << t.stats.driver_to_worker_words << ','
        << t.stats.worker_to_driver_words << ',' << fmt(t.wall_seconds) << '\n';
  }
}

void write_summary(std::ostream& out, const ExperimentConfig& config, const ExperimentResult& result) {
  const RunResult& r = result.run;
  out << "solver: " << to_string(config.solver) << '\n';
  if (!r.trace.empty()) {
    const IterationTrace& last = r.trace.back();
    out << "final_objective: " << fmt(last.objective) << '\n';
    out << "total_rounds: " << last.stats.rounds << '\n';
  } else {
    out << "final_objective: nan\n";
    out << "total_rounds: 0\n";
  }
  out << "converged: " << (r.converged ? "true" : "false") << '\n';
  out << "iterations: " << r.trace.size() << '\n';
  if (!r.trace.empty()) {
    out << "final_grad_norm: " << fmt(r.trace.back().grad_norm) << '\n';
    out << "final_error_norm: " << fmt(r.trace.back().error_norm) << '\n';
  }
  if (result.tuned_agd) {
    out << "tuned_step: " << fmt(result.tuned_agd->step_alpha) << '\n';
    out << "tuned_momentum: " << fmt(result.tuned_agd->momentum_beta) << '\n';
  }
  if (result.test_metric)
    out << (config.loss == LossKind::logistic ? "test_error: " : "test_mse: ") << fmt(*result.test_metric) << '\n';
  out << "accounting: " << (result.accounting_error ? *result.accounting_error : std::string("ok")) << '\n';
  if (!r.ok()) out << "failure: " << r.failure << '\n';
}

void write_outputs(const fs::path& dir, const ExperimentConfig& config, const ExperimentResult& result) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create " + dir.string() + ": " + ec.message());
  std::ofstream trace(dir / "trace.csv");
  std::ofstream summary(dir / "summary.txt");
  if (!trace || !summary) throw ConfigError("cannot write into " + dir.string());
  write_trace_csv(trace, result.run.trace);
  write_summary(summary, config, result);
  if (!trace || !summary) throw ConfigError("write error in " + dir.string());
}

SuiteFile parse_suite_config(const std::string& text) {
  const YAML::Node root = parse_yaml(text);
  SuiteFile out;
  if (root.IsNull()) return out;
  require_map(root, "suite");
  TheorySuiteConfig& c = out.config;
  using Setter = std::function<void(const YAML::Node&, const std::string&)>;
  const auto field = [](auto& ref) -> Setter {
    return [&ref](const YAML::Node& n, const std::string& w) { ref = as<std::remove_reference_t<decltype(ref)>>(n, w); };
  };
  const std::map<std::string, Setter> setters{
      {"seed", field(c.seed)},
      {"checks", field(c.checks)},
      {"lemma_trials", field(c.lemma_trials)},
      {"lemma_n", field(c.lemma_n)},
      {"lemma_d", field(c.lemma_d)},
      {"lemma_m", field(c.lemma_m)},
      {"lemma_kappa", field(c.lemma_kappa)},
      {"lemma_gamma", field(c.lemma_gamma)},
      {"lemma2_epsilon0", field(c.lemma2_epsilon0)},
      {"forced_eta", [&c](const YAML::Node& n, const std::string& w) { c.forced_eta = as<double>(n, w); }},
      {"lemma3_n", field(c.lemma3_n)},
      {"lemma3_d", field(c.lemma3_d)},
      {"lemma3_m", field(c.lemma3_m)},
      {"lemma3_trials", field(c.lemma3_trials)},
      {"lemma3_eta", field(c.lemma3_eta)},
      {"lemma3_delta", field(c.lemma3_delta)},
      {"prop1_d", field(c.prop1_d)},
      {"prop1_trials", field(c.prop1_trials)},
      {"prop1_kappas", field(c.prop1_kappas)},
      {"prop1_epsilon0", field(c.prop1_epsilon0)},
      {"phi_trials", field(c.phi_trials)},
      {"phi_d", field(c.phi_d)},
      {"ridge_n", field(c.ridge_n)},
      {"ridge_d", field(c.ridge_d)},
      {"ridge_m", field(c.ridge_m)},
      {"ridge_gamma", field(c.ridge_gamma)},
      {"ridge_kappa", field(c.ridge_kappa)},
      {"ridge_max_iterations", field(c.ridge_max_iterations)},
      {"theorem1_slack", field(c.theorem1_slack)},
      {"theorem3_margin", field(c.theorem3_margin)},
      {"logistic_n", field(c.logistic_n)},
      {"logistic_d", field(c.logistic_d)},
      {"logistic_m", field(c.logistic_m)},
      {"logistic_gamma", field(c.logistic_gamma)},
      {"logistic_offset", field(c.logistic_offset)},
      {"logistic_steps", field(c.logistic_steps)},
      {"theorem2_margin", field(c.theorem2_margin)},
      {"dane_instances", field(c.dane_instances)},
      {"dane_n", field(c.dane_n)},
      {"dane_d", field(c.dane_d)},
      {"dane_m", field(c.dane_m)},
      {"dane_iterations", field(c.dane_iterations)},
      {"dane_tol", field(c.dane_tol)},
      {"report", [&out](const YAML::Node& n, const std::string& w) { out.report = fs::path(as<std::string>(n, w)); }},
  };
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("suite: unknown key '" + key + "'");
    it->second(kv.second, key);
  }
  return out;
}

SuiteFile load_suite_config(const fs::path& path) { return parse_suite_config(read_file(path)); }

GenFile parse_gen_config(const std::string& text) {
  const YAML::Node root = parse_yaml(text);
  check_keys(root, "gen", {"generator", "seed", "output"});
  GenFile g;
  if (!root["generator"]) throw ConfigError("gen: generator is required");
  if (!root["output"]) throw ConfigError("gen: output is required");
  read_generator(root["generator"], g.spec, "generator");
  read(root, "seed", g.seed, "");
  g.output = as<std::string>(root["output"], "output");
  return g;
}

GenFile load_gen_config(const fs::path& path) { return parse_gen_config(read_file(path)); }

}  // namespace giant
