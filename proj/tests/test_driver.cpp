#include "doctest.h"

#include <cmath>
#include <cstring>
#include <limits>

#include "giant/data_io.hpp"
#include "giant/driver.hpp"
#include "giant/error.hpp"
#include "giant/synthetic.hpp"
#include "giant/theory.hpp"
#include "oracles.hpp"

using namespace giant;

namespace {

LabeledDataset ridge(std::size_t n, std::size_t d, double kappa, std::uint64_t seed) {
  GeneratorSpec g;
  g.n = n;
  g.d = d;
  g.kappa = kappa;
  return generate_synthetic(g, seed);
}

LabeledDataset logistic(std::size_t n, std::size_t d, std::uint64_t seed) {
  GeneratorSpec g;
  g.loss = LossKind::logistic;
  g.n = n;
  g.d = d;
  return generate_synthetic(g, seed);
}

ObjectiveSpec ridge_spec() { return {LossKind::quadratic, Regularizer::scaled_identity(GeneratorSpec{}.gamma)}; }

GiantConfig plain_config(std::size_t iterations) {
  GiantConfig c;
  c.max_iterations = iterations;
  c.line_search.enabled = false;
  c.stop_tol = 0.0;
  return c;
}

// One GIANT step from w0 without line search, returned as the direction p.
Vec giant_direction(const ObjectiveSpec& spec, const LabeledDataset& data,
                    const std::vector<WorkerShard>& shards, const Vec& w0, LocalSolve solve) {
  Fabric fabric(shards.size());
  GiantConfig c = plain_config(1);
  c.local_solve = solve;
  const RunResult r = run_giant(spec, data, shards, fabric, c, w0);
  REQUIRE(r.ok());
  return subtract(w0, r.w);
}

double h_norm(const DenseMatrix& h, const Vec& v) { return std::sqrt(dot(v, multiply(h, v))); }

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

}  // namespace

TEST_CASE("select_step") {
  const Vec cands = default_step_candidates();
  REQUIRE(cands.size() == 10);
  CHECK(cands[0] == 1.0);
  CHECK(cands[9] == std::pow(4.0, -9));

  SUBCASE("exact Newton step on a quadratic takes alpha = 1") {
    const LabeledDataset data = ridge(100, 5, 30.0, 1);
    const ObjectiveSpec spec = ridge_spec();
    const Vec w(5, 0.0);
    const Vec g = gradient(spec, data, w);
    const Vec p = newton_direction_oracle(spec, data, w);
    Vec values;
    for (double a : cands) values.push_back(objective_value(spec, data, add(w, scaled(-a, p))));
    const StepChoice s = select_step(values, objective_value(spec, data, w), -dot(p, g), 0.1, cands);
    CHECK(s.alpha == 1.0);
    CHECK(s.satisfied);
  }
  SUBCASE("ascent direction cannot satisfy the condition") {
    Vec values;
    for (double a : cands) values.push_back(1.0 + a);
    const StepChoice s = select_step(values, 1.0, 1.0, 0.1, cands);
    CHECK_FALSE(s.satisfied);
    CHECK(s.alpha == cands.back());
  }
  SUBCASE("only 4^-3 passes") {
    Vec values(10, 5.0);
    values[3] = 1.0 - 0.1 * cands[3] - 1e-9;
    values[4] = 1.0 - 0.1 * cands[4] + 1e-9;
    const StepChoice s = select_step(values, 1.0, -1.0, 0.1, cands);
    CHECK(s.alpha == std::pow(4.0, -3));
    CHECK(s.satisfied);
  }
  SUBCASE("fallback picks the best decreasing candidate") {
    Vec values(10, 2.0);
    values[6] = 0.999999;
    const StepChoice s = select_step(values, 1.0, -1.0, 0.1, cands);
    CHECK(s.alpha == cands[6]);
    CHECK_FALSE(s.satisfied);
  }
  SUBCASE("misaligned inputs") {
    CHECK_THROWS_AS(select_step(Vec(3, 0.0), 1.0, -1.0, 0.1, cands), DimensionMismatch);
  }
}

TEST_CASE("line-search settings validation") {
  LineSearchSettings s;
  CHECK_NOTHROW(s.validate());
  s.armijo_c = 1.0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.armijo_c = 0.1;
  s.candidates = {1.0, 1.0};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.candidates = {};
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("run_giant examples") {
  SUBCASE("single worker exact Newton solves a quadratic in one iteration") {
    const LabeledDataset data = ridge(200, 6, 100.0, 2);
    const ObjectiveSpec spec = ridge_spec();
    const std::vector<WorkerShard> shards = partition_shards(data, 1, 3, CgSettings{6, 0.0});
    Fabric fabric(1);
    GiantConfig c = plain_config(5);
    c.stop_tol = 1e-10;
    const Vec wstar = solve_reference(spec, data);
    const RunResult r = run_giant(spec, data, shards, fabric, c, Vec(6, 0.0), std::span<const double>(wstar));
    REQUIRE(r.ok());
    CHECK(r.converged);
    CHECK(r.trace.size() == 2);
    CHECK(r.trace[1].error_norm <= 1e-10 * r.trace[0].error_norm);
  }
  SUBCASE("already optimal start returns immediately") {
    const LabeledDataset data{oracle::random_matrix(20, 3, 1), Vec(20, 0.0)};
    const std::vector<WorkerShard> shards = partition_shards(data, 2, 1);
    Fabric fabric(2);
    const RunResult r = run_giant(ridge_spec(), data, shards, fabric, GiantConfig{}, Vec(3, 0.0));
    CHECK(r.converged);
    REQUIRE(r.trace.size() == 1);
    CHECK(r.trace[0].grad_norm == 0.0);
    CHECK(r.trace[0].step_size == 0.0);
    CHECK(r.w == Vec(3, 0.0));
  }
  SUBCASE("worker failure aborts with a partial trace") {
    const LabeledDataset data = ridge(40, 3, 10.0, 4);
    const std::vector<WorkerShard> shards = partition_shards(data, 2, 1);
    Fabric fabric(2);
    const Vec bad{std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
    const RunResult r = run_giant(ridge_spec(), data, shards, fabric, plain_config(3), bad);
    CHECK_FALSE(r.ok());
    CHECK(fabric.poisoned());
  }
  SUBCASE("mismatched shards are rejected") {
    const LabeledDataset data = ridge(40, 3, 10.0, 4);
    const std::vector<WorkerShard> shards = partition_shards(data, 2, 1);
    Fabric fabric(3);
    CHECK_THROWS_AS(run_giant(ridge_spec(), data, shards, fabric, GiantConfig{}, Vec(3, 0.0)), PreconditionError);
  }
}

TEST_CASE("communication accounting per iteration") {
  const LabeledDataset data = logistic(300, 7, 5);
  const ObjectiveSpec spec{LossKind::logistic, Regularizer::scaled_identity(1e-3)};
  const std::size_t m = 3, d = 7;
  const std::vector<WorkerShard> shards = partition_shards(data, m, 2);
  for (bool search : {false, true}) {
    Fabric fabric(m);
    GiantConfig c = plain_config(6);
    c.line_search.enabled = search;
    const RunResult r = run_giant(spec, data, shards, fabric, c, Vec(d, 0.0));
    REQUIRE(r.ok());
    REQUIRE(r.trace.size() == 6);
    const std::uint64_t rounds = search ? 6 : 4;
    const std::uint64_t down = search ? 3 * d * m : 2 * d * m;
    const std::uint64_t up = search ? 2 * d * m + 11 * m : 2 * d * m;
    NetworkStats prev;
    for (const IterationTrace& t : r.trace) {
      CHECK(t.stats.rounds - prev.rounds == rounds);
      CHECK(t.stats.driver_to_worker_words - prev.driver_to_worker_words == down);
      CHECK(t.stats.worker_to_driver_words - prev.worker_to_driver_words == up);
      prev = t.stats;
    }
  }
}

TEST_CASE("line search gives monotone descent") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const LabeledDataset data = logistic(400, 6, 10 + seed);
    const ObjectiveSpec spec{LossKind::logistic, Regularizer::scaled_identity(1e-4)};
    const std::vector<WorkerShard> shards = partition_shards(data, 4, seed);
    Fabric fabric(4);
    GiantConfig c;
    c.max_iterations = 15;
    c.cg = CgSettings{3, 0.0};
    const RunResult r = run_giant(spec, data, shards, fabric, c, oracle::random_vec(6, seed, 3.0));
    REQUIRE(r.ok());
    for (std::size_t t = 0; t + 1 < r.trace.size(); ++t)
      CHECK(r.trace[t + 1].objective <= r.trace[t].objective * (1.0 + 1e-14));
  }
}

TEST_CASE("sequential and parallel fabrics give identical traces") {
  const LabeledDataset data = logistic(500, 5, 3);
  const ObjectiveSpec spec{LossKind::logistic, Regularizer::scaled_identity(1e-3)};
  const std::vector<WorkerShard> shards = partition_shards(data, 5, 7);
  Fabric seq(5, ExecutionMode::sequential), par(5, ExecutionMode::parallel);
  GiantConfig c;
  c.max_iterations = 8;
  const RunResult a = run_giant(spec, data, shards, seq, c, Vec(5, 0.0));
  const RunResult b = run_giant(spec, data, shards, par, c, Vec(5, 0.0));
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t t = 0; t < a.trace.size(); ++t) {
    CHECK(same_bits(a.trace[t].objective, b.trace[t].objective));
    CHECK(same_bits(a.trace[t].grad_norm, b.trace[t].grad_norm));
    CHECK(same_bits(a.trace[t].step_size, b.trace[t].step_size));
    CHECK(a.trace[t].stats == b.trace[t].stats);
  }
  CHECK(std::memcmp(a.w.data(), b.w.data(), a.w.size() * sizeof(double)) == 0);
}

TEST_CASE("GIANT direction against the Newton oracle") {
  const ObjectiveSpec spec = ridge_spec();
  SUBCASE("one worker") {
    const LabeledDataset data = ridge(120, 6, 50.0, 8);
    const std::vector<WorkerShard> shards = partition_shards(data, 1, 1, CgSettings{6, 0.0});
    const Vec w0 = oracle::random_vec(6, 1);
    CHECK(oracle::rel_error(giant_direction(spec, data, shards, w0, LocalSolve::cg),
                            newton_direction_oracle(spec, data, w0)) <= 1e-8);
  }
  SUBCASE("identical shards") {
    const LabeledDataset data = ridge(60, 4, 20.0, 9);
    std::vector<WorkerShard> shards = partition_shards(data, 1, 1);
    shards.push_back(shards[0]);
    shards.push_back(shards[0]);
    // Each copy holds a third of the stacked rows, so its weight is 1/3.
    std::vector<std::size_t> idx;
    for (int k = 0; k < 3; ++k)
      for (std::size_t j = 0; j < data.n(); ++j) idx.push_back(j);
    const LabeledDataset stacked = data.subset(idx);
    for (std::size_t i = 0; i < 3; ++i) {
      shards[i].worker_id = i;
      shards[i].total_rows = stacked.n();
    }
    const Vec w0 = oracle::random_vec(4, 2);
    CHECK(oracle::rel_error(giant_direction(spec, stacked, shards, w0, LocalSolve::direct),
                            newton_direction_oracle(spec, data, w0)) <= 1e-10);
  }
  SUBCASE("four shards stay within the Lemma bound") {
    const LabeledDataset data = ridge(2048, 8, 100.0, 10);
    const std::vector<WorkerShard> shards = partition_shards(data, 4, 3);
    const Vec w0(8, 0.0);
    const Vec p = giant_direction(spec, data, shards, w0, LocalSolve::direct);
    const Vec pstar = newton_direction_oracle(spec, data, w0);
    const DenseMatrix h = materialize_hessian(spec, data, w0);
    const SketchMeasurement sk = measure_sketch(scaled_rows(spec, data, w0), spec.reg, shard_views(shards));
    REQUIRE(sk.assumption_holds);
    CHECK(h_norm(h, subtract(p, pstar)) / h_norm(h, pstar) <= sk.alpha.alpha());
  }
}

TEST_CASE("solve_reference") {
  SUBCASE("quadratic against the normal equations") {
    const LabeledDataset data = ridge(300, 10, 1e3, 12);
    const ObjectiveSpec spec = ridge_spec();
    const Eigen::MatrixXd x = oracle::to_eigen(data.features);
    const double n = static_cast<double>(data.n());
    const Eigen::MatrixXd h = x.transpose() * x / n + spec.reg.gamma() * Eigen::MatrixXd::Identity(10, 10);
    const Eigen::VectorXd rhs = x.transpose() * oracle::to_eigen(data.labels) / n;
    const Vec ref = oracle::from_eigen(Eigen::VectorXd(h.ldlt().solve(rhs)));
    const Vec w = solve_reference(spec, data);
    CHECK(oracle::rel_error(w, ref) <= 1e-10);
    CHECK(norm2(gradient(spec, data, w)) <= 1e-14 * norm2(gradient(spec, data, Vec(10, 0.0))) + 1e-15);
  }
  SUBCASE("separable logistic data with regularization") {
    LabeledDataset data{oracle::random_matrix(100, 3, 5), Vec(100)};
    for (std::size_t j = 0; j < 100; ++j) data.labels[j] = data.features(j, 0) > 0.0 ? 1.0 : -1.0;
    const ObjectiveSpec spec{LossKind::logistic, Regularizer::scaled_identity(1e-2)};
    const Vec w = solve_reference(spec, data);
    CHECK(all_finite(w));
    CHECK(norm2(gradient(spec, data, w)) <= 1e-8 * norm2(gradient(spec, data, Vec(3, 0.0))));
  }
  SUBCASE("needs strong convexity") {
    const LabeledDataset data = ridge(30, 3, 10.0, 1);
    CHECK_THROWS_AS(solve_reference({LossKind::quadratic, Regularizer::scaled_identity(0.0)}, data),
                    PreconditionError);
  }
}
