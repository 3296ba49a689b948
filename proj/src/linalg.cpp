#include "giant/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "giant/error.hpp"
#include "giant/kernels.hpp"

namespace giant {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  DenseMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  DenseMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("from_rows: ragged rows");
    std::copy(row.begin(), row.end(), m.row(i).begin());
    ++i;
  }
  return m;
}

Vec DenseMatrix::column(std::size_t c) const {
  Vec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
  return out;
}

void DenseMatrix::set_column(std::size_t c, std::span<const double> values) {
  if (values.size() != rows_) throw DimensionMismatch("set_column: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = values[i];
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::select_rows(std::span<const std::size_t> indices) const {
  DenseMatrix out(indices.size(), cols_);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= rows_) throw RangeError("select_rows: index out of range");
    const auto src = row(indices[k]);
    std::copy(src.begin(), src.end(), out.row(k).begin());
  }
  return out;
}

bool DenseMatrix::all_finite() const { return giant::all_finite(data_); }

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) {
  // Scaled accumulation keeps tiny and huge vectors representable.
  double scale = 0.0;
  for (double v : x) {
    if (std::isnan(v)) return v;
    scale = std::max(scale, std::abs(v));
  }
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double s = 0.0;
  for (double v : x) {
    const double t = v / scale;
    s += t * t;
  }
  return scale * std::sqrt(s);
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw DimensionMismatch("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

Vec add(std::span<const double> x, std::span<const double> y) {
  Vec out(x.begin(), x.end());
  axpy(1.0, y, out);
  return out;
}

Vec subtract(std::span<const double> x, std::span<const double> y) {
  Vec out(x.begin(), x.end());
  axpy(-1.0, y, out);
  return out;
}

Vec scaled(double a, std::span<const double> x) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i];
  return out;
}

bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

Vec multiply(const DenseMatrix& a, std::span<const double> v) { return kernels::matvec(a, v); }

Vec multiply_transposed(const DenseMatrix& a, std::span<const double> u) {
  return kernels::matvec_transposed(a, u);
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("multiply: inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) axpy(a(i, k), b.row(k), out);
  }
  return c;
}

DenseMatrix gram(const DenseMatrix& a) { return kernels::gram(a); }

double frobenius_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double r = norm2(a.row(i));
    s += r * r;
  }
  return std::sqrt(s);
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

CgReport cg_solve(const LinearOperator& apply_h, std::span<const double> b, std::size_t max_iter,
                  double rel_tol) {
  if (max_iter == 0) throw RangeError("cg_solve: max_iter must be at least 1");
  if (!(rel_tol >= 0.0)) throw RangeError("cg_solve: rel_tol must be non-negative");
  if (!all_finite(b)) throw NumericBreakdown("cg_solve: right-hand side is not finite");

  const std::size_t d = b.size();
  CgReport report;
  report.solution.assign(d, 0.0);
  const double b_norm = norm2(b);
  if (b_norm == 0.0) return report;

  Vec r(b.begin(), b.end());
  Vec p = r;
  double rr = dot(r, r);
  Vec& x = report.solution;
  for (std::size_t k = 1; k <= max_iter; ++k) {
    const Vec hp = apply_h(p);
    if (hp.size() != d) throw DimensionMismatch("cg_solve: operator changed the dimension");
    const double php = dot(p, hp);
    if (!std::isfinite(php)) throw NumericBreakdown("cg_solve: non-finite curvature");
    if (php <= 0.0) {
      // p ~ 0 after the residual has already vanished to rounding level.
      if (std::sqrt(rr) <= 1e-14 * b_norm) break;
      throw NumericBreakdown("cg_solve: non-positive curvature, operator is not SPD");
    }
    const double step = rr / php;
    axpy(step, p, x);
    axpy(-step, hp, r);
    const double rr_next = dot(r, r);
    if (!std::isfinite(rr_next) || !std::isfinite(step))
      throw NumericBreakdown("cg_solve: non-finite iterate");
    report.iterations = k;
    if (rr_next == 0.0 || std::sqrt(rr_next) <= rel_tol * b_norm) break;
    const double beta = rr_next / rr;
    for (std::size_t i = 0; i < d; ++i) p[i] = r[i] + beta * p[i];
    rr = rr_next;
  }
  const Vec hx = apply_h(x);
  report.final_residual_norm = norm2(subtract(b, hx));
  return report;
}

Cholesky::Cholesky(const DenseMatrix& h) : lower_(h.rows(), h.cols()) {
  if (h.rows() != h.cols()) throw DimensionMismatch("cholesky: matrix is not square");
  const std::size_t n = h.rows();
  for (std::size_t j = 0; j < n; ++j) {
    double diag = h(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= lower_(j, k) * lower_(j, k);
    if (!(diag > 0.0) || !std::isfinite(diag))
      throw NotPositiveDefinite("cholesky: pivot " + std::to_string(j) + " is not positive");
    const double ljj = std::sqrt(diag);
    lower_(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = h(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= lower_(i, k) * lower_(j, k);
      lower_(i, j) = s / ljj;
    }
  }
}

Vec Cholesky::solve(std::span<const double> b) const {
  const std::size_t n = lower_.rows();
  if (b.size() != n) throw DimensionMismatch("cholesky solve: length mismatch");
  Vec y(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    double s = y[i];
    for (std::size_t k = 0; k < i; ++k) s -= lower_(i, k) * y[k];
    y[i] = s / lower_(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= lower_(k, ii) * y[k];
    y[ii] = s / lower_(ii, ii);
  }
  return y;
}

Vec direct_spd_solve(const DenseMatrix& h, std::span<const double> b) {
  if (h.rows() != b.size()) throw DimensionMismatch("direct_spd_solve: length mismatch");
  const Cholesky chol(h);
  Vec x = chol.solve(b);
  // One step of iterative refinement.
  const Vec r = subtract(b, multiply(h, x));
  axpy(1.0, chol.solve(r), x);
  return x;
}

double power_iteration(const LinearOperator& apply_spd, std::size_t dim, double tol,
                       std::size_t max_iter) {
  if (dim == 0) return 0.0;
  std::mt19937_64 rng(0x5eed5eedULL);
  std::normal_distribution<double> normal;
  Vec v(dim);
  for (double& x : v) x = normal(rng);
  double nv = norm2(v);
  for (double& x : v) x /= nv;

  double estimate = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    Vec w = apply_spd(v);
    if (!all_finite(w)) throw NumericBreakdown("power_iteration: non-finite value");
    const double rayleigh = dot(v, w);
    const double nw = norm2(w);
    if (nw == 0.0) return 0.0;
    for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / nw;
    const bool done = it > 0 && std::abs(rayleigh - estimate) <= tol * std::abs(rayleigh);
    estimate = rayleigh;
    if (done) break;
  }
  return estimate;
}

double spectral_norm(const DenseMatrix& a, double tol, std::size_t max_iter) {
  if (!a.all_finite()) throw NumericBreakdown("spectral_norm: non-finite input");
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const auto op = [&a](std::span<const double> v) { return kernels::gram_apply(a, v); };
  return std::sqrt(std::max(0.0, power_iteration(op, a.cols(), tol, max_iter)));
}

EigenRange spd_eigen_range(const DenseMatrix& h, double tol) {
  const Cholesky chol(h);
  const auto fwd = [&h](std::span<const double> v) { return multiply(h, v); };
  const auto inv = [&chol](std::span<const double> v) { return chol.solve(v); };
  EigenRange range;
  range.max = power_iteration(fwd, h.rows(), tol);
  range.min = 1.0 / power_iteration(inv, h.rows(), tol);
  return range;
}

DenseMatrix thin_orthonormal_basis(const DenseMatrix& a) {
  const double cutoff = 1e-12 * frobenius_norm(a);
  std::vector<Vec> basis;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    Vec v = a.column(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vec& q : basis) axpy(-dot(q, v), q, v);
    }
    const double nv = norm2(v);
    if (nv <= cutoff || nv == 0.0) continue;
    for (double& x : v) x /= nv;
    basis.push_back(std::move(v));
  }
  DenseMatrix u(a.rows(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) u.set_column(c, basis[c]);
  return u;
}

}  // namespace giant
