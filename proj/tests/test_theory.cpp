#include "doctest.h"

#include <cmath>
#include <sstream>

#include "giant/data_io.hpp"
#include "giant/error.hpp"
#include "giant/synthetic.hpp"
#include "giant/theory.hpp"
#include "oracles.hpp"

using namespace giant;

namespace {

TheorySuiteConfig small_suite() {
  TheorySuiteConfig c;
  c.lemma_trials = 10;
  c.lemma3_trials = 40;
  c.lemma3_n = 2048;
  c.prop1_trials = 10;
  c.phi_trials = 5;
  c.ridge_n = 4096;
  c.ridge_d = 16;
  c.ridge_m = 4;
  c.logistic_n = 4096;
  c.logistic_d = 8;
  c.dane_instances = 3;
  c.dane_n = 512;
  return c;
}

const CheckResult& find(const std::vector<CheckResult>& checks, const std::string& name) {
  for (const CheckResult& c : checks)
    if (c.name == name) return c;
  FAIL("missing check " << name);
  return checks.front();
}

}  // namespace

TEST_CASE("reduced suite passes every check") {
  const std::vector<CheckResult> checks = run_theory_suite(small_suite());
  REQUIRE(checks.size() == theory_check_names().size());
  for (const CheckResult& c : checks) {
    INFO(format_check(c));
    CHECK(c.status == CheckStatus::pass);
  }
  const CheckResult& t1 = find(checks, "theorem1");
  CHECK(t1.value("alpha_observed") <= t1.value("alpha_formula"));
}

TEST_CASE("forced eta gating") {
  TheorySuiteConfig c = small_suite();
  c.checks = {"lemma1", "lemma2"};
  SUBCASE("eta at or above one makes the lemmas vacuous") {
    c.forced_eta = 1.5;
    const std::vector<CheckResult> checks = run_theory_suite(c);
    REQUIRE(checks.size() == 2);
    for (const CheckResult& r : checks) CHECK(r.status == CheckStatus::skip);
  }
  SUBCASE("eta below every measured deviation leaves nothing to check") {
    c.forced_eta = 1e-6;
    const std::vector<CheckResult> checks = run_theory_suite(c);
    for (const CheckResult& r : checks) {
      CHECK(r.status == CheckStatus::skip);
      CHECK(r.value("qualifying") == 0.0);
    }
  }
  SUBCASE("a loose eta below one still passes") {
    c.forced_eta = 0.95;
    const std::vector<CheckResult> checks = run_theory_suite(c);
    for (const CheckResult& r : checks) {
      CHECK(r.status == CheckStatus::pass);
      CHECK(r.value("mean_eta") == doctest::Approx(0.95));
    }
  }
}

TEST_CASE("check selection") {
  TheorySuiteConfig c = small_suite();
  c.checks = {"phi_translation"};
  const std::vector<CheckResult> checks = run_theory_suite(c);
  REQUIRE(checks.size() == 1);
  CHECK(checks[0].name == "phi_translation");
  c.checks = {"lemma9"};
  CHECK_THROWS_AS(run_theory_suite(c), ConfigError);
}

TEST_CASE("report format") {
  CheckResult r("theorem1");
  r.status = CheckStatus::fail;
  r.add("eta", 0.25);
  r.add("steps", 8);
  r.note = "contraction";
  CHECK(format_check(r) == "theorem1 FAIL eta=0.25 steps=8 # contraction");
  CHECK(r.value("steps") == 8.0);
  CHECK(std::isnan(r.value("missing")));
  CheckResult s("prop1");
  s.status = CheckStatus::pass;
  const std::vector<CheckResult> both{r, s};
  std::ostringstream out;
  write_report(out, both);
  CHECK(out.str() == "theorem1 FAIL eta=0.25 steps=8 # contraction\nprop1 PASS\n");
  CHECK(std::string(to_string(CheckStatus::skip)) == "SKIP");
}

TEST_CASE("random_spd_matrix has the requested spectrum") {
  for (double kappa : {1.0, 50.0, 1e4}) {
    const Eigen::VectorXd ev = oracle::symmetric_eigenvalues(random_spd_matrix(10, kappa, 3));
    CHECK(ev.minCoeff() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ev.maxCoeff() == doctest::Approx(kappa).epsilon(1e-10));
  }
}

TEST_CASE("partition views of shards have zero pooled deviation") {
  GeneratorSpec g;
  g.n = 1024;
  g.d = 6;
  const LabeledDataset data = generate_synthetic(g, 2);
  const ObjectiveSpec spec{LossKind::quadratic, Regularizer::scaled_identity(g.gamma)};
  const std::vector<WorkerShard> shards = partition_shards(data, 4, 1);
  const SketchMeasurement sk = measure_sketch(scaled_rows(spec, data, Vec(6, 0.0)), spec.reg, shard_views(shards));
  CHECK(sk.deviation.pooled <= 1e-12);
  CHECK(sk.eta > 0.0);
  CHECK(sk.eta < 1.0);
  CHECK(sk.assumption_holds);
  CHECK(sk.alpha.alpha() > 0.0);
}
