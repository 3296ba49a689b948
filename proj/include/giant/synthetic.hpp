#pragma once

#include <cstddef>
#include <cstdint>

#include "giant/objective.hpp"

namespace giant {

struct GeneratorSpec {
  LossKind loss = LossKind::quadratic;
  std::size_t n = 1024;
  std::size_t d = 16;
  double kappa = 100.0;  // target condition number of X^T X / n + gamma I (quadratic)
  double gamma = 1e-3;
  double noise = 0.1;    // label noise std (quadratic) or flip probability (logistic)
};

// Quadratic: X = U diag(s) V^T with seeded orthonormal U (n x d) and V (d x d);
// the spectrum of X^T X / n + gamma I is geometric from lambda_min to
// kappa * lambda_min. Logistic: standard Gaussian features and labels from a
// planted model with random flips.
LabeledDataset generate_synthetic(const GeneratorSpec& spec, std::uint64_t seed);

}  // namespace giant
