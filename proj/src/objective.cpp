#include "giant/objective.hpp"

#include <algorithm>
#include <cmath>

#include "giant/error.hpp"
#include "giant/kernels.hpp"

namespace giant {

Regularizer Regularizer::scaled_identity(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw RangeError("regularizer: gamma must be finite and non-negative");
  Regularizer r;
  r.gamma_ = gamma;
  return r;
}

Regularizer Regularizer::diagonal(Vec entries) {
  for (double e : entries)
    if (!(e >= 0.0) || !std::isfinite(e))
      throw RangeError("regularizer: diagonal entries must be finite and non-negative");
  Regularizer r;
  r.diagonal_ = true;
  r.entries_ = std::move(entries);
  return r;
}

Vec Regularizer::apply(std::span<const double> w) const {
  if (!diagonal_) return scaled(gamma_, w);
  if (w.size() != entries_.size()) throw DimensionMismatch("regularizer: dimension mismatch");
  Vec out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = entries_[i] * w[i];
  return out;
}

double Regularizer::value(std::span<const double> w) const {
  if (!diagonal_) return 0.5 * gamma_ * dot(w, w);
  return 0.5 * dot(w, apply(w));
}

double Regularizer::min_eigenvalue() const {
  if (!diagonal_) return gamma_;
  return entries_.empty() ? 0.0 : *std::min_element(entries_.begin(), entries_.end());
}

void Regularizer::add_to(DenseMatrix& h) const {
  if (diagonal_ && entries_.size() != h.rows())
    throw DimensionMismatch("regularizer: dimension mismatch");
  for (std::size_t i = 0; i < h.rows(); ++i) h(i, i) += diagonal_ ? entries_[i] : gamma_;
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
  LabeledDataset out;
  out.features = features.select_rows(indices);
  out.labels.reserve(indices.size());
  for (std::size_t i : indices) out.labels.push_back(labels[i]);
  return out;
}

void validate(const ObjectiveSpec& spec, const LabeledDataset& data) {
  if (data.n() == 0) throw PreconditionError("dataset has no samples");
  if (data.labels.size() != data.n())
    throw DimensionMismatch("dataset: label count does not match row count");
  if (spec.reg.is_diagonal() && spec.reg.entries().size() != data.d())
    throw DimensionMismatch("regularizer dimension does not match features");
  if (spec.loss == LossKind::logistic) {
    for (double y : data.labels)
      if (y != 1.0 && y != -1.0) throw PreconditionError("logistic loss needs labels in {-1, +1}");
  }
}

namespace loss {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double value(LossKind kind, double z, double y) {
  if (kind == LossKind::quadratic) return 0.5 * (z - y) * (z - y);
  // log(1 + exp(-t)) with t = y z
  const double t = y * z;
  if (t >= 0.0) return std::log1p(std::exp(-t));
  return -t + std::log1p(std::exp(t));
}

double first(LossKind kind, double z, double y) {
  if (kind == LossKind::quadratic) return z - y;
  return -y * sigmoid(-y * z);
}

double second(LossKind kind, double z, double y) {
  if (kind == LossKind::quadratic) return 1.0;
  return sigmoid(y * z) * sigmoid(-y * z);
}

}  // namespace loss

namespace {

void check_w(const LabeledDataset& data, std::span<const double> w) {
  if (w.size() != data.d()) throw DimensionMismatch("parameter length does not match features");
}

}  // namespace

double mean_loss(const ObjectiveSpec& spec, const LabeledDataset& data, std::span<const double> w) {
  validate(spec, data);
  check_w(data, w);
  const Vec z = kernels::matvec(data.features, w);
  double sum = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) sum += loss::value(spec.loss, z[j], data.labels[j]);
  return sum / static_cast<double>(data.n());
}

double objective_value(const ObjectiveSpec& spec, const LabeledDataset& data,
                       std::span<const double> w) {
  return mean_loss(spec, data, w) + spec.reg.value(w);
}

Vec gradient(const ObjectiveSpec& spec, const LabeledDataset& data, std::span<const double> w) {
  validate(spec, data);
  check_w(data, w);
  const Vec z = kernels::matvec(data.features, w);
  const double inv_n = 1.0 / static_cast<double>(data.n());
  Vec coef(z.size());
  for (std::size_t j = 0; j < z.size(); ++j)
    coef[j] = inv_n * loss::first(spec.loss, z[j], data.labels[j]);
  Vec g = kernels::matvec_transposed(data.features, coef);
  axpy(1.0, spec.reg.apply(w), g);
  return g;
}

DenseMatrix scaled_rows(const ObjectiveSpec& spec, const LabeledDataset& data,
                        std::span<const double> w) {
  validate(spec, data);
  check_w(data, w);
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(data.n()));
  DenseMatrix a = data.features;
  if (spec.loss == LossKind::quadratic) {
    for (std::size_t j = 0; j < a.rows(); ++j)
      for (double& x : a.row(j)) x *= inv_sqrt_n;
    return a;
  }
  const Vec z = kernels::matvec(data.features, w);
  for (std::size_t j = 0; j < a.rows(); ++j) {
    const double c = std::sqrt(loss::second(spec.loss, z[j], data.labels[j])) * inv_sqrt_n;
    for (double& x : a.row(j)) x *= c;
  }
  return a;
}

Vec hessian_vec(const ObjectiveSpec& spec, const LabeledDataset& data, std::span<const double> w,
                std::span<const double> v) {
  if (v.size() != data.d()) throw DimensionMismatch("hessian_vec: vector length mismatch");
  const DenseMatrix a = scaled_rows(spec, data, w);
  Vec hv = kernels::gram_apply(a, v);
  axpy(1.0, spec.reg.apply(v), hv);
  return hv;
}

DenseMatrix materialize_hessian(const ObjectiveSpec& spec, const LabeledDataset& data,
                                std::span<const double> w, std::size_t limit) {
  if (data.d() > limit)
    throw OracleSizeError("materialize_hessian: d = " + std::to_string(data.d()) +
                          " exceeds oracle limit " + std::to_string(limit));
  DenseMatrix h = kernels::gram(scaled_rows(spec, data, w));
  spec.reg.add_to(h);
  return h;
}

}  // namespace giant
