#include "doctest.h"

#include <cmath>
#include <cstring>
#include <numeric>

#include "giant/data_io.hpp"
#include "giant/error.hpp"
#include "giant/synthetic.hpp"
#include "giant/worker.hpp"
#include "oracles.hpp"

using namespace giant;

namespace {

WorkerShard whole(const LabeledDataset& data) {
  WorkerShard s;
  s.local_indices.resize(data.n());
  std::iota(s.local_indices.begin(), s.local_indices.end(), 0);
  s.total_rows = data.n();
  s.data = data;
  return s;
}

LabeledDataset logistic_data(std::size_t n, std::size_t d, std::uint64_t seed) {
  GeneratorSpec g;
  g.loss = LossKind::logistic;
  g.n = n;
  g.d = d;
  return generate_synthetic(g, seed);
}

double h_norm(const DenseMatrix& h, const Vec& v) { return std::sqrt(dot(v, multiply(h, v))); }

}  // namespace

TEST_CASE("local gradients") {
  const LabeledDataset data = logistic_data(64, 6, 1);
  const ObjectiveSpec spec{LossKind::logistic, Regularizer::scaled_identity(0.01)};
  const Vec w = oracle::random_vec(6, 2, 0.3);
  const Vec global = gradient(spec, data, w);

  SUBCASE("single shard is the global gradient") {
    CHECK(local_gradient(whole(data), spec, w) == global);
  }
  SUBCASE("identical shards each see the global gradient") {
    const WorkerShard s = whole(data);
    for (int i = 0; i < 3; ++i) CHECK(local_gradient(s, spec, w) == global);
  }
  SUBCASE("averaging equal disjoint shards recovers the global gradient") {
    const std::vector<WorkerShard> shards = partition_shards(data, 4, 5);
    Vec avg(6, 0.0);
    for (const WorkerShard& s : shards) axpy(0.25, local_gradient(s, spec, w), avg);
    CHECK(oracle::rel_error(avg, global) <= 1e-12);
  }
  SUBCASE("shard weights handle a remainder") {
    const LabeledDataset odd = logistic_data(67, 6, 3);
    const std::vector<WorkerShard> shards = partition_shards(odd, 4, 5);
    Vec sum(6, 0.0);
    for (const WorkerShard& s : shards) axpy(s.weight(), local_gradient(s, spec, w), sum);
    CHECK(oracle::rel_error(sum, gradient(spec, odd, w)) <= 1e-12);
  }
}

TEST_CASE("local ANT directions") {
  SUBCASE("single quadratic shard with exact CG gives the Newton direction") {
    GeneratorSpec g;
    g.n = 200;
    g.d = 8;
    g.kappa = 50.0;
    const LabeledDataset data = generate_synthetic(g, 4);
    const ObjectiveSpec spec{LossKind::quadratic, Regularizer::scaled_identity(g.gamma)};
    WorkerShard s = whole(data);
    s.cg = CgSettings{8, 0.0};
    const Vec w(8, 0.0);
    const Vec grad = gradient(spec, data, w);
    const Vec newton = oracle::eigen_solve(materialize_hessian(spec, data, w), grad);
    CHECK(oracle::rel_error(local_ant_direction(s, spec, w, grad).direction, newton) <= 1e-8);
  }
  SUBCASE("zero gradient") {
    const LabeledDataset data = logistic_data(20, 3, 2);
    const ObjectiveSpec spec{LossKind::logistic, Regularizer::scaled_identity(0.1)};
    const AntDirection a = local_ant_direction(whole(data), spec, Vec(3, 0.0), Vec(3, 0.0));
    CHECK(a.direction == Vec(3, 0.0));
    CHECK(a.cg.iterations == 0);
  }
  SUBCASE("CG against the dense local Hessian") {
    const LabeledDataset data = logistic_data(400, 16, 9);
    const ObjectiveSpec spec{LossKind::logistic, Regularizer::scaled_identity(1e-3)};
    const std::vector<WorkerShard> shards = partition_shards(data, 4, 1, CgSettings{200, 1e-13});
    const Vec w = oracle::random_vec(16, 10, 0.2);
    const Vec g = gradient(spec, data, w);
    for (const WorkerShard& s : shards) {
      const Vec cg = local_ant_direction(s, spec, w, g).direction;
      CHECK(oracle::rel_error(cg, oracle::eigen_solve(local_hessian(s, spec, w), g)) <= 1e-8);
      CHECK(oracle::rel_error(cg, exact_local_newton(s, spec, w, g)) <= 1e-10);
    }
  }
  SUBCASE("local Hessian uses the shard's own 1/s scaling") {
    const LabeledDataset data = logistic_data(90, 4, 3);
    const ObjectiveSpec spec{LossKind::logistic, Regularizer::scaled_identity(0.0)};
    const std::vector<WorkerShard> shards = partition_shards(data, 4, 2);
    const Vec w = oracle::random_vec(4, 1);
    for (const WorkerShard& s : shards) {
      Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(4, 4);
      for (std::size_t j = 0; j < s.size(); ++j) {
        const Eigen::VectorXd x = oracle::to_eigen(Vec(s.data.features.row(j).begin(), s.data.features.row(j).end()));
        ref += loss::second(LossKind::logistic, x.dot(oracle::to_eigen(w)), s.data.labels[j]) * x * x.transpose();
      }
      ref /= static_cast<double>(s.size());
      CHECK(max_abs_diff(local_hessian(s, spec, w), oracle::from_eigen(ref)) <= 1e-13);
    }
  }
}

TEST_CASE("exact_local_newton") {
  SUBCASE("identity Hessian returns g") {
    // Quadratic with X^T X / n = I.
    const LabeledDataset data{DenseMatrix::diagonal(Vec(3, std::sqrt(3.0))), Vec(3, 0.0)};
    const ObjectiveSpec spec{LossKind::quadratic, Regularizer::scaled_identity(0.0)};
    const Vec g{1.0, -2.0, 3.0};
    CHECK(oracle::rel_error(exact_local_newton(whole(data), spec, Vec(3, 0.0), g), g) <= 1e-15);
  }
  SUBCASE("heavy regularization tends to g / gamma") {
    const LabeledDataset data = logistic_data(50, 5, 7);
    const ObjectiveSpec spec{LossKind::logistic, Regularizer::scaled_identity(1e6)};
    const Vec g = oracle::random_vec(5, 8);
    const Vec p = exact_local_newton(whole(data), spec, oracle::random_vec(5, 9), g);
    const Vec limit = scaled(1e-6, g);
    CHECK(norm2(subtract(p, limit)) / norm2(limit) <= 1e-3);
  }
  SUBCASE("oracle size limit") {
    const LabeledDataset data = logistic_data(10, 6, 1);
    const ObjectiveSpec spec{LossKind::logistic, Regularizer::scaled_identity(1.0)};
    CHECK_THROWS_AS(exact_local_newton(whole(data), spec, Vec(6, 0.0), Vec(6, 1.0), 5), OracleSizeError);
  }
}

TEST_CASE("local line-search values") {
  const LabeledDataset data = logistic_data(103, 5, 11);
  const ObjectiveSpec spec{LossKind::logistic, Regularizer::scaled_identity(0.02)};
  const std::vector<WorkerShard> shards = partition_shards(data, 4, 3);
  const Vec w = oracle::random_vec(5, 12, 0.3);
  const Vec candidates{1.0, 0.25, 0.0625, 0.0};

  SUBCASE("zero direction gives constant values") {
    const Vec v = local_linesearch_values(shards[0], spec, w, Vec(5, 0.0), candidates, 4);
    for (double x : v) CHECK(x == v[0]);
  }
  SUBCASE("sum over workers is the global objective") {
    const Vec p = oracle::random_vec(5, 13);
    Vec total(candidates.size(), 0.0);
    for (const WorkerShard& s : shards) axpy(1.0, local_linesearch_values(s, spec, w, p, candidates, 4), total);
    for (std::size_t k = 0; k < candidates.size(); ++k)
      CHECK(total[k] == doctest::Approx(objective_value(spec, data, add(w, scaled(candidates[k], p)))).epsilon(1e-12));
  }
  SUBCASE("unit Newton step lands on the quadratic optimum") {
    GeneratorSpec g;
    g.n = 80;
    g.d = 4;
    const LabeledDataset q = generate_synthetic(g, 2);
    const ObjectiveSpec qs{LossKind::quadratic, Regularizer::scaled_identity(g.gamma)};
    const Vec w0(4, 0.0);
    const Vec p = oracle::eigen_solve(materialize_hessian(qs, q, w0), gradient(qs, q, w0));
    const Vec wstar = scaled(-1.0, p);
    const Vec v = local_linesearch_values(whole(q), qs, w0, scaled(-1.0, p), Vec{1.0}, 1);
    CHECK(v[0] == doctest::Approx(objective_value(qs, q, wstar)).epsilon(1e-12));
    CHECK(norm2(gradient(qs, q, wstar)) <= 1e-10);
  }
}

TEST_CASE("prop1_cg_budget") {
  CHECK(prop1_cg_budget(100.0, 0.1) == 34);
  CHECK(prop1_cg_budget(1.0, 0.1) == 1);
  CHECK(prop1_cg_budget(1.0 + 1e-300, 0.1) == 1);
  CHECK(prop1_cg_budget(1000.0, 0.1) > prop1_cg_budget(100.0, 0.1));
  CHECK(prop1_cg_budget(100.0, 0.01) > prop1_cg_budget(100.0, 0.1));
  CHECK_THROWS_AS(prop1_cg_budget(100.0, 0.0), RangeError);
  const CgSettings b = CgSettings::budget(100.0, 0.1);
  CHECK(b.max_iter == 34);
  CHECK(b.rel_tol == 0.0);
}

TEST_CASE("the CG budget certifies the local accuracy") {
  const double eps0 = 0.1;
  for (double kappa : {10.0, 100.0, 1000.0}) {
    std::size_t ok = 0;
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
      const DenseMatrix h = oracle::random_spd(16, kappa, 100 * trial + static_cast<std::uint64_t>(kappa));
      const Vec g = oracle::random_vec(16, 7 * trial + 1);
      const Vec exact = oracle::eigen_solve(h, g);
      const CgSettings cg = CgSettings::budget(kappa, eps0);
      const Vec approx =
          cg_solve([&](std::span<const double> v) { return multiply(h, v); }, g, cg.max_iter, cg.rel_tol).solution;
      if (h_norm(h, subtract(approx, exact)) <= 0.5 * eps0 * h_norm(h, exact)) ++ok;
    }
    CHECK(ok == 50);
  }
}

TEST_CASE("workers are pure") {
  const LabeledDataset data = logistic_data(60, 4, 21);
  const ObjectiveSpec spec{LossKind::logistic, Regularizer::scaled_identity(0.01)};
  const WorkerShard a = whole(data);
  const WorkerShard b = whole(data);
  const Vec w = oracle::random_vec(4, 1);
  const Vec g = oracle::random_vec(4, 2);
  const Vec pa = local_ant_direction(a, spec, w, g).direction;
  const Vec pb = local_ant_direction(b, spec, w, g).direction;
  CHECK(std::memcmp(pa.data(), pb.data(), pa.size() * sizeof(double)) == 0);
  CHECK(a.data == data);
}
