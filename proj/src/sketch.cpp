#include "giant/sketch.hpp"

#include <algorithm>
#include <cmath>

#include "giant/error.hpp"
#include "giant/rng.hpp"

namespace giant {

DenseMatrix SamplingMatrixView::apply(const DenseMatrix& a) const {
  if (a.rows() != source_rows) throw DimensionMismatch("sketch: source row count mismatch");
  DenseMatrix out(selected.size(), a.cols());
  for (std::size_t k = 0; k < selected.size(); ++k) {
    const auto src = a.row(selected[k].index);
    auto dst = out.row(k);
    for (std::size_t c = 0; c < a.cols(); ++c) dst[c] = selected[k].scale * src[c];
  }
  return out;
}

DenseMatrix SamplingMatrixView::sketched_gram(const DenseMatrix& u) const {
  return gram(apply(u));
}

SamplingMatrixView uniform_sample(std::size_t n, std::size_t s, std::uint64_t seed) {
  if (n == 0 || s == 0) throw RangeError("uniform_sample: n and s must be positive");
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(s));
  SamplingMatrixView view{n, {}};
  view.selected.reserve(s);
  for (std::size_t k = 0; k < s; ++k) view.selected.push_back({pick(rng), scale});
  return view;
}

SamplingMatrixView partition_view(std::size_t n, std::span<const std::size_t> indices) {
  if (indices.empty()) throw RangeError("partition_view: empty block");
  const double scale = std::sqrt(static_cast<double>(n) / static_cast<double>(indices.size()));
  SamplingMatrixView view{n, {}};
  for (std::size_t i : indices) {
    if (i >= n) throw RangeError("partition_view: index out of range");
    view.selected.push_back({i, scale});
  }
  return view;
}

double row_coherence(const DenseMatrix& a) {
  if (a.rows() < a.cols() || a.cols() == 0)
    throw PreconditionError("row_coherence: needs n >= d >= 1");
  const DenseMatrix u = thin_orthonormal_basis(a);
  if (u.cols() == 0) throw PreconditionError("row_coherence: zero matrix");
  double max_norm = 0.0;
  for (std::size_t j = 0; j < u.rows(); ++j) max_norm = std::max(max_norm, dot(u.row(j), u.row(j)));
  return static_cast<double>(u.rows()) / static_cast<double>(u.cols()) * max_norm;
}

double DeviationReport::max_per_view() const {
  return per_view.empty() ? 0.0 : *std::max_element(per_view.begin(), per_view.end());
}

namespace {

double deviation_from_identity(DenseMatrix g) {
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) -= 1.0;
  return spectral_norm(g);
}

}  // namespace

DeviationReport spectral_deviation(const DenseMatrix& u, std::span<const SamplingMatrixView> views) {
  if (views.empty()) throw PreconditionError("spectral_deviation: no views");
  const std::size_t rho = u.cols();
  if (max_abs_diff(gram(u), DenseMatrix::identity(rho)) > 1e-8)
    throw PreconditionError("spectral_deviation: u does not have orthonormal columns");

  DeviationReport report;
  DenseMatrix pooled(rho, rho);
  const double inv_m = 1.0 / static_cast<double>(views.size());
  for (const SamplingMatrixView& view : views) {
    if (view.source_rows != u.rows())
      throw PreconditionError("spectral_deviation: view does not match u's row count");
    const DenseMatrix g = view.sketched_gram(u);
    for (std::size_t i = 0; i < rho; ++i)
      for (std::size_t j = 0; j < rho; ++j) pooled(i, j) += inv_m * g(i, j);
    report.per_view.push_back(deviation_from_identity(g));
  }
  report.pooled = deviation_from_identity(std::move(pooled));
  return report;
}

std::size_t lemma3_sample_size(double mu, std::size_t d, std::size_t m, double eta, double delta) {
  if (!(eta > 0.0 && eta < 1.0)) throw RangeError("lemma3_sample_size: eta must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw RangeError("lemma3_sample_size: delta must lie in (0, 1)");
  if (!(mu >= 1.0) || d == 0 || m == 0) throw RangeError("lemma3_sample_size: mu >= 1, d, m >= 1");
  const double dd = static_cast<double>(d);
  const double s = 3.0 * mu * dd / (eta * eta) * std::log(dd * static_cast<double>(m) / delta);
  return static_cast<std::size_t>(std::ceil(s));
}

double phi_value(const LinearOperator& hessian_apply, std::span<const double> g,
                 std::span<const double> p) {
  if (g.size() != p.size()) throw DimensionMismatch("phi_value: length mismatch");
  const Vec hp = hessian_apply(p);
  return 0.5 * dot(p, hp) - dot(p, g);
}

double AlphaConstants::alpha() const {
  const double base =
      vartheta * (eta / std::sqrt(static_cast<double>(m)) + eta * eta / (1.0 - eta));
  return epsilon0 > 0.0 ? base + epsilon0 / (1.0 - eta) : base;
}

AlphaConstants alpha_bound(const DenseMatrix& a_t, const Regularizer& reg, double eta,
                           std::size_t m, double epsilon0) {
  if (!(eta > 0.0 && eta < 1.0)) throw RangeError("alpha_bound: eta must lie in (0, 1)");
  if (!(epsilon0 >= 0.0 && epsilon0 < 1.0)) throw RangeError("alpha_bound: epsilon0 in [0, 1)");
  if (m == 0) throw RangeError("alpha_bound: m must be positive");
  const double sigma = spectral_norm(a_t);
  const double top = sigma * sigma;
  const double denom = top + reg.min_eigenvalue();
  AlphaConstants c;
  c.eta = eta;
  c.m = m;
  c.vartheta = denom > 0.0 ? top / denom : 1.0;
  c.epsilon0 = epsilon0;
  return c;
}

}  // namespace giant
