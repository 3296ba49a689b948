#include "giant/kernels.hpp"

#include <algorithm>

#include "giant/error.hpp"

namespace giant::kernels {

namespace {

std::size_t block_count(std::size_t rows) { return (rows + kRowBlock - 1) / kRowBlock; }

void check_cols(const DenseMatrix& a, std::size_t len) {
  if (a.cols() != len) throw DimensionMismatch("matvec: vector length does not match columns");
}

void check_rows(const DenseMatrix& a, std::size_t len) {
  if (a.rows() != len) throw DimensionMismatch("matvec_transposed: vector length does not match rows");
}

}  // namespace

Vec matvec(const DenseMatrix& a, std::span<const double> v) {
  check_cols(a, v.size());
  const auto n = static_cast<std::ptrdiff_t>(a.rows());
  Vec y(a.rows(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    y[i] = dot(a.row(i), v);
  }
  return y;
}

Vec matvec_transposed(const DenseMatrix& a, std::span<const double> u) {
  check_rows(a, u.size());
  const std::size_t d = a.cols();
  const std::size_t blocks = block_count(a.rows());
  std::vector<Vec> partial(blocks, Vec(d, 0.0));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t lo = b * kRowBlock;
    const std::size_t hi = std::min(a.rows(), lo + kRowBlock);
    Vec& acc = partial[b];
    for (std::size_t i = lo; i < hi; ++i) axpy(u[i], a.row(i), acc);
  }
  Vec z(d, 0.0);
  for (const Vec& p : partial) axpy(1.0, p, z);
  return z;
}

Vec gram_apply(const DenseMatrix& a, std::span<const double> v) {
  return matvec_transposed(a, matvec(a, v));
}

DenseMatrix gram(const DenseMatrix& a) {
  const std::size_t d = a.cols();
  const std::size_t blocks = block_count(a.rows());
  std::vector<DenseMatrix> partial(blocks, DenseMatrix(d, d));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t lo = b * kRowBlock;
    const std::size_t hi = std::min(a.rows(), lo + kRowBlock);
    DenseMatrix& acc = partial[b];
    for (std::size_t i = lo; i < hi; ++i) {
      const auto r = a.row(i);
      for (std::size_t j = 0; j < d; ++j) {
        if (r[j] == 0.0) continue;
        auto out = acc.row(j);
        for (std::size_t k = j; k < d; ++k) out[k] += r[j] * r[k];
      }
    }
  }
  DenseMatrix g(d, d);
  for (const DenseMatrix& p : partial) {
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = j; k < d; ++k) g(j, k) += p(j, k);
  }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < j; ++k) g(j, k) = g(k, j);
  return g;
}

namespace serial {

Vec matvec(const DenseMatrix& a, std::span<const double> v) {
  check_cols(a, v.size());
  Vec y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    y[i] = s;
  }
  return y;
}

Vec matvec_transposed(const DenseMatrix& a, std::span<const double> u) {
  check_rows(a, u.size());
  Vec z(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) z[j] += a(i, j) * u[i];
  return z;
}

Vec gram_apply(const DenseMatrix& a, std::span<const double> v) {
  return matvec_transposed(a, matvec(a, v));
}

DenseMatrix gram(const DenseMatrix& a) {
  const std::size_t d = a.cols();
  DenseMatrix g(d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, j) * a(i, k);
      g(j, k) = s;
    }
  return g;
}

}  // namespace serial

}  // namespace giant::kernels
