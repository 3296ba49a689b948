#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "giant/linalg.hpp"
#include "giant/objective.hpp"
#include "giant/sketch.hpp"
#include "giant/worker.hpp"

namespace giant {

enum class CheckStatus { pass, fail, skip };

const char* to_string(CheckStatus status);

struct CheckResult {
  explicit CheckResult(std::string check_name = {}) : name(std::move(check_name)) {}

  std::string name;
  CheckStatus status = CheckStatus::skip;
  std::vector<std::pair<std::string, double>> measured;
  std::string note;

  void add(std::string key, double value) { measured.emplace_back(std::move(key), value); }
  double value(const std::string& key) const;
};

// One line: `<name> PASS|FAIL|SKIP key=value ... [# note]`
std::string format_check(const CheckResult& check);
void write_report(std::ostream& out, std::span<const CheckResult> checks);

// Each shard as a partition sketch of the full dataset.
std::vector<SamplingMatrixView> shard_views(std::span<const WorkerShard> shards);

struct SketchMeasurement {
  DeviationReport deviation;
  double eta = 0.0;               // max per-view deviation
  bool assumption_holds = false;  // eta < 1 and pooled <= eta / sqrt(m)
  AlphaConstants alpha;
};

// Deviations of the views on an orthonormal basis of a_t, with alpha constants
// for the measured eta.
SketchMeasurement measure_sketch(const DenseMatrix& a_t, const Regularizer& reg,
                                 std::span<const SamplingMatrixView> views, double epsilon0 = 0.0);

// Q diag(lambda) Q^T with eigenvalues geometric on [1, kappa].
DenseMatrix random_spd_matrix(std::size_t d, double kappa, std::uint64_t seed);

struct TheorySuiteConfig {
  std::uint64_t seed = 2017;
  std::vector<std::string> checks;  // empty runs every check

  std::size_t lemma_trials = 50;
  std::size_t lemma_n = 512;
  std::size_t lemma_d = 8;
  std::size_t lemma_m = 4;
  double lemma_kappa = 100.0;
  double lemma_gamma = 1e-3;
  double lemma2_epsilon0 = 0.1;
  std::optional<double> forced_eta;  // replaces the measured eta in the bounds

  std::size_t lemma3_n = 4096;
  std::size_t lemma3_d = 8;
  std::size_t lemma3_m = 4;
  std::size_t lemma3_trials = 200;
  double lemma3_eta = 0.5;
  double lemma3_delta = 0.1;

  std::size_t prop1_d = 16;
  std::size_t prop1_trials = 50;
  std::vector<double> prop1_kappas{10.0, 100.0, 1000.0};
  double prop1_epsilon0 = 0.1;

  std::size_t phi_trials = 20;
  std::size_t phi_d = 12;

  std::size_t ridge_n = 16384;
  std::size_t ridge_d = 32;
  std::size_t ridge_m = 8;
  double ridge_gamma = 1e-3;
  double ridge_kappa = 1e3;
  std::size_t ridge_max_iterations = 40;
  double theorem1_slack = 0.05;
  double theorem3_margin = 0.10;

  std::size_t logistic_n = 8192;
  std::size_t logistic_d = 16;
  std::size_t logistic_m = 4;
  double logistic_gamma = 1e-3;
  double logistic_offset = 1e-3;
  std::size_t logistic_steps = 5;
  double theorem2_margin = 0.10;

  std::size_t dane_instances = 20;
  std::size_t dane_n = 1024;
  std::size_t dane_d = 8;
  std::size_t dane_m = 4;
  std::size_t dane_iterations = 10;
  double dane_tol = 1e-10;
};

// Check names: lemma1, lemma2, lemma3, prop1, phi_translation, theorem1,
// theorem2, theorem3, dane_equivalence.
std::vector<std::string> theory_check_names();

// Runs the selected checks; an unknown name is a ConfigError.
std::vector<CheckResult> run_theory_suite(const TheorySuiteConfig& config);

// Lemma 1 and Lemma 2 share instances and are returned together.
std::pair<CheckResult, CheckResult> check_lemma1_lemma2(const TheorySuiteConfig& config);
CheckResult check_lemma3(const TheorySuiteConfig& config);
CheckResult check_prop1(const TheorySuiteConfig& config);
CheckResult check_phi_translation(const TheorySuiteConfig& config);
CheckResult check_theorem1(const TheorySuiteConfig& config);
CheckResult check_theorem2(const TheorySuiteConfig& config);
CheckResult check_theorem3(const TheorySuiteConfig& config);
CheckResult check_dane_equivalence(const TheorySuiteConfig& config);

}  // namespace giant
