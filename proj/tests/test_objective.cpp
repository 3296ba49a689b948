#include "doctest.h"

#include <cmath>
#include <random>

#include "giant/driver.hpp"
#include "giant/error.hpp"
#include "giant/objective.hpp"
#include "oracles.hpp"

using namespace giant;

namespace {

LabeledDataset random_instance(LossKind kind, std::size_t n, std::size_t d, std::uint64_t seed) {
  LabeledDataset data{oracle::random_matrix(n, d, seed), Vec(n)};
  std::mt19937_64 rng(seed + 1);
  std::normal_distribution<double> normal;
  for (double& y : data.labels)
    y = kind == LossKind::logistic ? (normal(rng) > 0.0 ? 1.0 : -1.0) : normal(rng);
  return data;
}

ObjectiveSpec make_spec(LossKind kind, double gamma) {
  return ObjectiveSpec{kind, Regularizer::scaled_identity(gamma)};
}

double max_rel(const Vec& x, const Vec& ref) {
  double worst = 0.0;
  const double scale = norm2(ref);
  for (std::size_t k = 0; k < x.size(); ++k)
    worst = std::max(worst, std::abs(x[k] - ref[k]) / std::max(std::abs(ref[k]), 1e-3 * scale));
  return worst;
}

}  // namespace

TEST_CASE("objective_value examples") {
  SUBCASE("exact fit") {
    const LabeledDataset data{DenseMatrix::identity(2), Vec{1.0, 1.0}};
    CHECK(objective_value(make_spec(LossKind::quadratic, 0.0), data, Vec{1.0, 1.0}) == 0.0);
  }
  SUBCASE("logistic at zero") {
    const LabeledDataset data = random_instance(LossKind::logistic, 17, 3, 4);
    CHECK(objective_value(make_spec(LossKind::logistic, 0.0), data, Vec(3, 0.0)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
  }
  SUBCASE("hand evaluation") {
    const LabeledDataset data{DenseMatrix::from_rows({{1.0}, {2.0}}), Vec{1.0, 0.0}};
    CHECK(objective_value(make_spec(LossKind::quadratic, 2.0), data, Vec{1.0}) ==
          doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("diagonal regularizer") {
    const LabeledDataset data{DenseMatrix::from_rows({{1.0, 0.0}}), Vec{1.0}};
    const ObjectiveSpec spec{LossKind::quadratic, Regularizer::diagonal(Vec{2.0, 4.0})};
    // 1/2 (1 - 1)^2 + 1/2 (2 * 1 + 4 * 1)
    CHECK(objective_value(spec, data, Vec{1.0, 1.0}) == doctest::Approx(3.0));
  }
  SUBCASE("large margins do not overflow") {
    const LabeledDataset data{DenseMatrix::from_rows({{1.0}, {1.0}}), Vec{1.0, -1.0}};
    const double f = objective_value(make_spec(LossKind::logistic, 0.0), data, Vec{1000.0});
    CHECK(std::isfinite(f));
    CHECK(f == doctest::Approx(500.0).epsilon(1e-12));
  }
}

TEST_CASE("objective_value agrees with a brute-force long double evaluation") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (LossKind kind : {LossKind::quadratic, LossKind::logistic}) {
      const LabeledDataset data = random_instance(kind, 40, 6, seed);
      const Vec w = oracle::random_vec(6, seed + 77);
      const double ref = oracle::brute_objective(kind, data, 0.3, w);
      CHECK(objective_value(make_spec(kind, 0.3), data, w) == doctest::Approx(ref).epsilon(1e-13));
    }
  }
}

TEST_CASE("loss derivatives") {
  CHECK(loss::sigmoid(0.0) == 0.5);
  CHECK(loss::first(LossKind::quadratic, 3.0, 1.0) == 2.0);
  CHECK(loss::second(LossKind::quadratic, 3.0, 1.0) == 1.0);
  CHECK(loss::first(LossKind::logistic, 0.0, 1.0) == -0.5);
  CHECK(loss::second(LossKind::logistic, 0.0, -1.0) == 0.25);
  CHECK(loss::sigmoid(-800.0) >= 0.0);
  CHECK(loss::sigmoid(800.0) == 1.0);
  for (double z : {-3.0, -0.4, 0.1, 2.5}) {
    for (double y : {-1.0, 1.0}) {
      const double h = 1e-6;
      const double fd1 = (loss::value(LossKind::logistic, z + h, y) - loss::value(LossKind::logistic, z - h, y)) /
                         (2 * h);
      const double fd2 = (loss::first(LossKind::logistic, z + h, y) - loss::first(LossKind::logistic, z - h, y)) /
                         (2 * h);
      CHECK(loss::first(LossKind::logistic, z, y) == doctest::Approx(fd1).epsilon(1e-7));
      CHECK(loss::second(LossKind::logistic, z, y) == doctest::Approx(fd2).epsilon(1e-7));
    }
  }
}

TEST_CASE("gradient examples") {
  SUBCASE("logistic at zero") {
    const LabeledDataset data = random_instance(LossKind::logistic, 12, 4, 9);
    const Vec g = gradient(make_spec(LossKind::logistic, 0.0), data, Vec(4, 0.0));
    Vec expect(4, 0.0);
    for (std::size_t j = 0; j < 12; ++j)
      for (std::size_t k = 0; k < 4; ++k) expect[k] -= data.labels[j] * data.features(j, k) / 24.0;
    CHECK(oracle::rel_error(g, expect) <= 1e-14);
  }
  SUBCASE("zero residual leaves the regularizer") {
    const DenseMatrix x = oracle::random_matrix(10, 3, 2);
    const Vec w = oracle::random_vec(3, 5);
    const LabeledDataset data{x, multiply(x, w)};
    const Vec g = gradient(make_spec(LossKind::quadratic, 0.7), data, w);
    CHECK(oracle::rel_error(g, scaled(0.7, w)) <= 1e-13);
  }
}

TEST_CASE("gradient matches central differences on seeded instances") {
  for (std::uint64_t seed = 0; seed < 24; ++seed) {
    const LossKind kind = seed % 2 == 0 ? LossKind::logistic : LossKind::quadratic;
    const std::size_t d = 5;
    const LabeledDataset data = random_instance(kind, 32, d, 1000 + seed);
    const ObjectiveSpec spec = make_spec(kind, 0.01 * static_cast<double>(seed));
    const Vec w = oracle::random_vec(d, 2000 + seed, 0.5);
    const Vec fd = oracle::fd_gradient([&](const Vec& u) { return objective_value(spec, data, u); }, w, 1e-5);
    CHECK(max_rel(gradient(spec, data, w), fd) <= 1e-5);
  }
  SUBCASE("diagonal regularizer") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Vec diag = oracle::random_vec(4, seed);
      for (double& x : diag) x = std::abs(x);
      const ObjectiveSpec spec{LossKind::logistic, Regularizer::diagonal(diag)};
      const LabeledDataset data = random_instance(LossKind::logistic, 32, 4, seed + 50);
      const Vec w = oracle::random_vec(4, seed + 60);
      const Vec fd = oracle::fd_gradient([&](const Vec& u) { return objective_value(spec, data, u); }, w, 1e-5);
      CHECK(max_rel(gradient(spec, data, w), fd) <= 1e-5);
    }
  }
}

TEST_CASE("scaled_rows examples") {
  const LabeledDataset data = random_instance(LossKind::logistic, 9, 3, 21);
  SUBCASE("quadratic is X / sqrt(n)") {
    const DenseMatrix a = scaled_rows(make_spec(LossKind::quadratic, 0.0), data, oracle::random_vec(3, 1));
    for (std::size_t j = 0; j < 9; ++j)
      for (std::size_t k = 0; k < 3; ++k) CHECK(a(j, k) == doctest::Approx(data.features(j, k) / 3.0));
  }
  SUBCASE("logistic at zero is X / (2 sqrt(n))") {
    const DenseMatrix a = scaled_rows(make_spec(LossKind::logistic, 0.0), data, Vec(3, 0.0));
    for (std::size_t j = 0; j < 9; ++j)
      for (std::size_t k = 0; k < 3; ++k) CHECK(a(j, k) == doctest::Approx(data.features(j, k) / 6.0));
  }
}

TEST_CASE("Hessian products match finite differences of the gradient") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const LabeledDataset data = random_instance(LossKind::logistic, 30, 5, 300 + seed);
    const ObjectiveSpec spec = make_spec(LossKind::logistic, 0.05);
    const Vec w = oracle::random_vec(5, 400 + seed, 0.5);
    const Vec v = oracle::random_vec(5, 500 + seed);
    const double h = 1e-5;
    const Vec gp = gradient(spec, data, add(w, scaled(h, v)));
    const Vec gm = gradient(spec, data, add(w, scaled(-h, v)));
    const Vec fd = scaled(1.0 / (2 * h), subtract(gp, gm));
    CHECK(oracle::rel_error(hessian_vec(spec, data, w, v), fd) <= 1e-4);

    const DenseMatrix a = scaled_rows(spec, data, w);
    Vec via_rows = multiply_transposed(a, multiply(a, v));
    axpy(0.05, v, via_rows);
    CHECK(oracle::rel_error(via_rows, fd) <= 1e-4);
  }
}

TEST_CASE("hessian_vec examples") {
  const LabeledDataset data{DenseMatrix::identity(4), Vec{1.0, 2.0, 3.0, 4.0}};
  const ObjectiveSpec spec = make_spec(LossKind::quadratic, 0.0);
  CHECK(hessian_vec(spec, data, Vec(4, 0.3), Vec(4, 0.0)) == Vec(4, 0.0));
  const Vec hv = hessian_vec(spec, data, Vec(4, 0.3), Vec{4.0, 8.0, -4.0, 1.0});
  CHECK(oracle::rel_error(hv, Vec{1.0, 2.0, -1.0, 0.25}) <= 1e-15);
}

TEST_CASE("materialize_hessian") {
  SUBCASE("quadratic is X^T X / n + gamma I") {
    const DenseMatrix x = oracle::random_matrix(20, 4, 8);
    const LabeledDataset data{x, Vec(20, 0.0)};
    const DenseMatrix h = materialize_hessian(make_spec(LossKind::quadratic, 0.5), data, Vec(4, 0.0));
    Eigen::MatrixXd ref = oracle::to_eigen(x).transpose() * oracle::to_eigen(x) / 20.0;
    ref += 0.5 * Eigen::MatrixXd::Identity(4, 4);
    CHECK(max_abs_diff(h, oracle::from_eigen(ref)) <= 1e-13);
  }
  SUBCASE("symmetry, spectrum and consistency with scaled rows") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const LossKind kind = seed % 2 ? LossKind::logistic : LossKind::quadratic;
      const LabeledDataset data = random_instance(kind, 25, 6, 600 + seed);
      Vec diag = oracle::random_vec(6, seed);
      for (double& e : diag) e = std::abs(e);
      const ObjectiveSpec spec =
          seed % 3 == 0 ? ObjectiveSpec{kind, Regularizer::diagonal(diag)} : make_spec(kind, 0.2);
      const Vec w = oracle::random_vec(6, 700 + seed);
      const DenseMatrix h = materialize_hessian(spec, data, w);
      CHECK(max_abs_diff(h, h.transposed()) == 0.0);
      CHECK(oracle::symmetric_eigenvalues(h)(0) >= spec.reg.min_eigenvalue() - 1e-12);
      DenseMatrix rows = gram(scaled_rows(spec, data, w));
      spec.reg.add_to(rows);
      CHECK(max_abs_diff(rows, h) <= 1e-12);
      const Vec v = oracle::random_vec(6, 800 + seed);
      CHECK(oracle::rel_error(hessian_vec(spec, data, w, v), multiply(h, v)) <= 1e-12);
    }
  }
  SUBCASE("dimension limit") {
    const LabeledDataset data{DenseMatrix(2, 8), Vec(2, 0.0)};
    CHECK_THROWS_AS(materialize_hessian(make_spec(LossKind::quadratic, 0.0), data, Vec(8, 0.0), 4),
                    OracleSizeError);
  }
}

TEST_CASE("objective is convex along random segments") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const LossKind kind = seed % 2 ? LossKind::logistic : LossKind::quadratic;
    const LabeledDataset data = random_instance(kind, 30, 4, 900 + seed);
    const ObjectiveSpec spec = make_spec(kind, 0.0);
    const Vec w1 = oracle::random_vec(4, seed, 2.0);
    const Vec w2 = oracle::random_vec(4, seed + 1000, 2.0);
    const double f1 = objective_value(spec, data, w1);
    const double f2 = objective_value(spec, data, w2);
    for (double lam : {0.25, 0.5, 0.75}) {
      const Vec mid = add(scaled(lam, w1), scaled(1.0 - lam, w2));
      CHECK(objective_value(spec, data, mid) <= lam * f1 + (1.0 - lam) * f2 + 1e-12);
    }
  }
}

TEST_CASE("strong convexity around the optimum") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const LossKind kind = seed % 2 ? LossKind::logistic : LossKind::quadratic;
    const double gamma = 0.1;
    const LabeledDataset data = random_instance(kind, 60, 5, 1100 + seed);
    const ObjectiveSpec spec = make_spec(kind, gamma);
    const Vec wstar = solve_reference(spec, data);
    const double fstar = objective_value(spec, data, wstar);
    for (std::uint64_t probe = 0; probe < 5; ++probe) {
      const Vec w = add(wstar, oracle::random_vec(5, 50 * seed + probe));
      const Vec diff = subtract(w, wstar);
      CHECK(objective_value(spec, data, w) - fstar >= 0.5 * gamma * dot(diff, diff) - 1e-12);
    }
  }
}

TEST_CASE("validation rejects malformed inputs") {
  const LabeledDataset data{DenseMatrix::identity(2), Vec{0.5, 1.0}};
  CHECK_THROWS_AS(validate(make_spec(LossKind::logistic, 0.0), data), Error);
  CHECK_NOTHROW(validate(make_spec(LossKind::quadratic, 0.0), data));
  CHECK_THROWS_AS(validate(make_spec(LossKind::quadratic, -1.0), data), Error);
  const LabeledDataset ragged{DenseMatrix::identity(2), Vec{1.0}};
  CHECK_THROWS_AS(validate(make_spec(LossKind::quadratic, 0.0), ragged), Error);
  CHECK_THROWS_AS(objective_value(make_spec(LossKind::quadratic, 0.0), data, Vec(3, 0.0)), Error);
}
