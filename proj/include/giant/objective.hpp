#pragma once

#include <cstddef>
#include <span>

#include "giant/linalg.hpp"

namespace giant {

enum class LossKind { quadratic, logistic };

// Symmetric PSD regularizer M, restricted to gamma * I or a non-negative
// diagonal. The objective carries 1/2 w^T M w.
class Regularizer {
 public:
  static Regularizer scaled_identity(double gamma);
  static Regularizer diagonal(Vec entries);

  bool is_diagonal() const { return diagonal_; }
  double gamma() const { return gamma_; }
  const Vec& entries() const { return entries_; }

  Vec apply(std::span<const double> w) const;
  double value(std::span<const double> w) const;
  double min_eigenvalue() const;
  // Adds M to the diagonal of a d x d matrix.
  void add_to(DenseMatrix& h) const;

 private:
  Regularizer() = default;
  bool diagonal_ = false;
  double gamma_ = 0.0;
  Vec entries_;
};

struct ObjectiveSpec {
  LossKind loss = LossKind::quadratic;
  Regularizer reg = Regularizer::scaled_identity(0.0);
};

struct LabeledDataset {
  DenseMatrix features;  // n x d
  Vec labels;            // n

  std::size_t n() const { return features.rows(); }
  std::size_t d() const { return features.cols(); }

  LabeledDataset subset(std::span<const std::size_t> indices) const;
  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

// Throws if labels do not fit the loss (logistic needs +-1) or shapes disagree.
void validate(const ObjectiveSpec& spec, const LabeledDataset& data);

namespace loss {

// l(z; y), l'(z; y), l''(z; y) for one sample with margin z = w^T x.
double value(LossKind kind, double z, double y);
double first(LossKind kind, double z, double y);
double second(LossKind kind, double z, double y);
double sigmoid(double t);

}  // namespace loss

// (1/n) sum_j l_j(w^T x_j), without the regularizer.
double mean_loss(const ObjectiveSpec& spec, const LabeledDataset& data, std::span<const double> w);

double objective_value(const ObjectiveSpec& spec, const LabeledDataset& data,
                       std::span<const double> w);

Vec gradient(const ObjectiveSpec& spec, const LabeledDataset& data, std::span<const double> w);

// Rows sqrt(l''_j(w^T x_j)) x_j / sqrt(n), so that A^T A + M is the Hessian.
DenseMatrix scaled_rows(const ObjectiveSpec& spec, const LabeledDataset& data,
                        std::span<const double> w);

Vec hessian_vec(const ObjectiveSpec& spec, const LabeledDataset& data, std::span<const double> w,
                std::span<const double> v);

inline constexpr std::size_t kOracleDimLimit = 256;

DenseMatrix materialize_hessian(const ObjectiveSpec& spec, const LabeledDataset& data,
                                std::span<const double> w, std::size_t limit = kOracleDimLimit);

}  // namespace giant
