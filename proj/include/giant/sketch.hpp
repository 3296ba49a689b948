#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "giant/linalg.hpp"
#include "giant/objective.hpp"

namespace giant {

struct SampledRow {
  std::size_t index = 0;
  double scale = 0.0;
  friend bool operator==(const SampledRow&, const SampledRow&) = default;
};

// Row-selection sketch S (n x s) stored as the selected rows: the k-th sketched
// row of S^T A is scale_k * a_{index_k}.
struct SamplingMatrixView {
  std::size_t source_rows = 0;
  std::vector<SampledRow> selected;

  std::size_t size() const { return selected.size(); }
  DenseMatrix apply(const DenseMatrix& a) const;
  // U^T S S^T U for a matrix with source_rows rows.
  DenseMatrix sketched_gram(const DenseMatrix& u) const;
  friend bool operator==(const SamplingMatrixView&, const SamplingMatrixView&) = default;
};

// s i.i.d. uniform draws with replacement, each scaled by sqrt(n / s).
SamplingMatrixView uniform_sample(std::size_t n, std::size_t s, std::uint64_t seed);

// Disjoint block of a shuffled partition viewed as a sketch: every index in
// the block once, scaled by sqrt(n / s).
SamplingMatrixView partition_view(std::size_t n, std::span<const std::size_t> indices);

// mu(A) = (n / rank) * max_j ||u_j||^2 over rows of an orthonormal column basis.
double row_coherence(const DenseMatrix& a);

struct DeviationReport {
  std::vector<double> per_view;  // ||U^T S_i S_i^T U - I||_2
  double pooled = 0.0;           // same for S = m^{-1/2} [S_1, ..., S_m]
  double max_per_view() const;
};

DeviationReport spectral_deviation(const DenseMatrix& u, std::span<const SamplingMatrixView> views);

// ceil(3 mu d / eta^2 * log(d m / delta))
std::size_t lemma3_sample_size(double mu, std::size_t d, std::size_t m, double eta, double delta);

// 1/2 p^T H p - p^T g
double phi_value(const LinearOperator& hessian_apply, std::span<const double> g,
                 std::span<const double> p);

struct AlphaConstants {
  double eta = 0.0;
  std::size_t m = 1;
  double vartheta = 1.0;
  double epsilon0 = 0.0;

  // vartheta (eta / sqrt(m) + eta^2 / (1 - eta)) [+ epsilon0 / (1 - eta)]
  double alpha() const;
};

AlphaConstants alpha_bound(const DenseMatrix& a_t, const Regularizer& reg, double eta,
                           std::size_t m, double epsilon0);

}  // namespace giant
