#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "giant/data_io.hpp"
#include "giant/error.hpp"
#include "giant/experiment.hpp"
#include "giant/synthetic.hpp"
#include "giant/theory.hpp"

namespace {

constexpr int kConfigFailure = 1;
constexpr int kRunFailure = 2;
constexpr int kCheckFailure = 3;

int run_command(const std::string& config_path, const std::optional<std::string>& output,
                const std::optional<std::uint64_t>& seed) {
  giant::ExperimentConfig config = giant::load_experiment_config(config_path);
  if (seed) config.seed = *seed;
  if (output) config.output = *output;
  if (!config.output) {
    std::cerr << "error: no output directory; set `output` in the config or pass --output\n";
    return kConfigFailure;
  }
  const giant::ExperimentResult result = giant::run_experiment(config);
  giant::write_outputs(*config.output, config, result);
  giant::write_summary(std::cout, config, result);
  if (!result.run.ok()) {
    std::cerr << "error: solver aborted: " << result.run.failure << '\n';
    return kRunFailure;
  }
  if (result.accounting_error) {
    std::cerr << "error: communication accounting: " << *result.accounting_error << '\n';
    return kRunFailure;
  }
  return 0;
}

int verify_command(const std::string& suite_path) {
  const giant::SuiteFile suite = giant::load_suite_config(suite_path);
  const std::vector<giant::CheckResult> checks = giant::run_theory_suite(suite.config);
  giant::write_report(std::cout, checks);
  if (suite.report) {
    std::ofstream out(*suite.report);
    if (!out) throw giant::ConfigError("cannot write " + suite.report->string());
    giant::write_report(out, checks);
  }
  int failures = 0;
  for (const giant::CheckResult& c : checks)
    if (c.status == giant::CheckStatus::fail) {
      std::cerr << "failed: " << c.name << '\n';
      ++failures;
    }
  return failures == 0 ? 0 : kCheckFailure;
}

int gen_command(const std::string& spec_path) {
  const giant::GenFile gen = giant::load_gen_config(spec_path);
  const giant::LabeledDataset data = giant::generate_synthetic(gen.spec, gen.seed);
  if (gen.output.has_parent_path()) std::filesystem::create_directories(gen.output.parent_path());
  std::ofstream out(gen.output);
  if (!out) throw giant::ConfigError("cannot write " + gen.output.string());
  giant::write_libsvm(data, out);
  if (!out) throw giant::ConfigError("write error in " + gen.output.string());
  std::cout << "wrote " << data.n() << " x " << data.d() << " to " << gen.output.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GIANT distributed Newton experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  CLI::App* run = app.add_subcommand("run", "Run one experiment and write trace.csv and summary.txt");
  run->add_option("--config", config_path, "Experiment config (YAML)")->required()->check(CLI::ExistingFile);
  run->add_option("--output", output, "Output directory, overrides the config");
  run->add_option("--seed", seed, "Root seed, overrides the config");

  std::string suite_path;
  CLI::App* verify = app.add_subcommand("verify", "Run the theory checks and print one line per check");
  verify->add_option("--suite", suite_path, "Suite config (YAML)")->required()->check(CLI::ExistingFile);

  std::string spec_path;
  CLI::App* gen = app.add_subcommand("gen", "Write a synthetic dataset in LIBSVM format");
  gen->add_option("--spec", spec_path, "Generator spec (YAML)")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(config_path, output, seed);
    if (*verify) return verify_command(suite_path);
    if (*gen) return gen_command(spec_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigFailure;
  }
  return kConfigFailure;
}
