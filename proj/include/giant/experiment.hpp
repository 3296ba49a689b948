#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "giant/baselines.hpp"
#include "giant/comms.hpp"
#include "giant/data_io.hpp"
#include "giant/driver.hpp"
#include "giant/synthetic.hpp"
#include "giant/theory.hpp"

namespace giant {

enum class SolverKind { giant, agd, lbfgs, dane };

const char* to_string(SolverKind kind);

struct DatasetSource {
  std::optional<std::filesystem::path> libsvm;
  GeneratorSpec synthetic;  // used when libsvm is empty; loss follows the experiment
  std::optional<double> train_fraction;
  std::optional<RffConfig> rff;  // sigma <= 0 means estimate it from the data
  std::size_t rff_pair_budget = 10000;
  std::size_t augment_factor = 1;
  double augment_noise = 0.02;
};

struct AgdGrid {
  std::vector<double> steps;
  std::vector<double> momenta;
};

struct ExperimentConfig {
  SolverKind solver = SolverKind::giant;
  std::uint64_t seed = 0;
  std::size_t workers = 4;
  LossKind loss = LossKind::quadratic;
  double gamma = 1e-3;
  ExecutionMode execution = ExecutionMode::sequential;
  bool reference = true;  // solve for w* so the trace carries error_norm
  bool record_wall_time = false;
  DatasetSource dataset;
  std::optional<std::filesystem::path> output;

  GiantConfig giant;
  std::optional<double> giant_cg_kappa;  // derive the CG budget from kappa and epsilon0
  double giant_cg_epsilon0 = 0.1;
  AgdConfig agd;
  std::optional<AgdGrid> agd_grid;
  LbfgsConfig lbfgs;
  DaneConfig dane;
};

// YAML; a relative libsvm path resolves against base_dir.
ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct PreparedData {
  LabeledDataset train;
  std::optional<LabeledDataset> test;
};

PreparedData prepare_dataset(const ExperimentConfig& config);

// Collective rounds and words one iteration of the solver spends.
struct IterationCost {
  std::uint64_t rounds = 0;
  std::uint64_t d2w_words = 0;
  std::uint64_t w2d_words = 0;
};

IterationCost expected_iteration_cost(const ExperimentConfig& config, std::size_t d);
// The gradient-only collectives of an iteration that stops at its gradient.
IterationCost expected_stop_cost(const ExperimentConfig& config, std::size_t d);

// Checks every trace entry's NetworkStats delta; returns the first violation.
std::optional<std::string> audit_accounting(const ExperimentConfig& config, std::size_t d,
                                            const std::vector<IterationTrace>& trace,
                                            bool converged);

struct ExperimentResult {
  RunResult run;
  std::optional<AgdConfig> tuned_agd;
  std::optional<std::string> accounting_error;
  std::optional<double> test_metric;  // misclassification rate or mean squared error

  bool ok() const { return run.ok() && !accounting_error; }
};

ExperimentResult run_experiment(const ExperimentConfig& config);

inline constexpr const char* kTraceHeader =
    "iteration,objective,grad_norm,error_norm,step_size,rounds,d2w_words,w2d_words,wall_seconds";

void write_trace_csv(std::ostream& out, const std::vector<IterationTrace>& trace);
void write_summary(std::ostream& out, const ExperimentConfig& config, const ExperimentResult& result);

// Writes trace.csv and summary.txt into dir, creating it if needed.
void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                   const ExperimentResult& result);

struct SuiteFile {
  TheorySuiteConfig config;
  std::optional<std::filesystem::path> report;
};

// Flat YAML whose keys are the TheorySuiteConfig field names, plus `report`.
SuiteFile parse_suite_config(const std::string& text);
SuiteFile load_suite_config(const std::filesystem::path& path);

struct GenFile {
  GeneratorSpec spec;
  std::uint64_t seed = 0;
  std::filesystem::path output;
};

GenFile parse_gen_config(const std::string& text);
GenFile load_gen_config(const std::filesystem::path& path);

}  // namespace giant
