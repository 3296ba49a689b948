#include "giant/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "giant/error.hpp"
#include "giant/rng.hpp"

namespace giant {

namespace {

DenseMatrix gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal;
  DenseMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (double& x : g.row(i)) x = normal(rng);
  return g;
}

LabeledDataset quadratic_instance(const GeneratorSpec& spec, std::uint64_t seed) {
  const std::size_t n = spec.n, d = spec.d;
  if (n < d) throw ConfigError("generator: quadratic instances need n >= d");
  Rng rng = make_rng(seed, "synthetic.basis");
  const DenseMatrix u = thin_orthonormal_basis(gaussian(n, d, rng));
  const DenseMatrix v = thin_orthonormal_basis(gaussian(d, d, rng));
  if (u.cols() != d || v.cols() != d) throw ConfigError("generator: degenerate random basis");

  // Eigenvalues e_k of X^T X / n with (e_max + gamma) / (e_min + gamma) = kappa.
  const double top = std::max(1.0, 2.0 * spec.gamma * spec.kappa);
  const double lambda_max = top + spec.gamma;
  const double lambda_min = lambda_max / spec.kappa;
  if (lambda_min < spec.gamma) throw ConfigError("generator: kappa is infeasible for gamma");
  Vec root(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double frac = d == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(d - 1);
    const double lambda = lambda_max * std::pow(spec.kappa, -frac);
    root[k] = std::sqrt(std::max(0.0, lambda - spec.gamma) * static_cast<double>(n));
  }
  DenseMatrix sv(d, d);  // diag(root) V^T
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) sv(k, j) = root[k] * v(j, k);

  LabeledDataset data;
  data.features = multiply(u, sv);
  Rng label_rng = make_rng(seed, "synthetic.labels");
  std::normal_distribution<double> normal;
  Vec w_true(d);
  for (double& x : w_true) x = normal(label_rng) / std::sqrt(static_cast<double>(d));
  data.labels = multiply(data.features, w_true);
  for (double& y : data.labels) y += spec.noise * normal(label_rng);
  return data;
}

LabeledDataset logistic_instance(const GeneratorSpec& spec, std::uint64_t seed) {
  Rng rng = make_rng(seed, "synthetic.features");
  LabeledDataset data;
  data.features = gaussian(spec.n, spec.d, rng);
  Rng label_rng = make_rng(seed, "synthetic.labels");
  std::normal_distribution<double> normal;
  std::bernoulli_distribution flip(std::clamp(spec.noise, 0.0, 1.0));
  Vec w_true(spec.d);
  for (double& x : w_true) x = normal(label_rng) / std::sqrt(static_cast<double>(spec.d));
  const Vec margin = multiply(data.features, w_true);
  data.labels.resize(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double y = margin[i] >= 0.0 ? 1.0 : -1.0;
    data.labels[i] = flip(label_rng) ? -y : y;
  }
  return data;
}

}  // namespace

LabeledDataset generate_synthetic(const GeneratorSpec& spec, std::uint64_t seed) {
  if (spec.n == 0 || spec.d == 0) throw ConfigError("generator: n and d must be positive");
  if (!(spec.kappa >= 1.0)) throw ConfigError("generator: kappa must be at least 1");
  if (!(spec.gamma >= 0.0)) throw ConfigError("generator: gamma must be non-negative");
  return spec.loss == LossKind::quadratic ? quadratic_instance(spec, seed)
                                          : logistic_instance(spec, seed);
}

}  // namespace giant
