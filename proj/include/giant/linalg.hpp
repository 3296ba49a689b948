#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace giant {

using Vec = std::vector<double>;

// Dense real matrix. Entries are reached only through (row, col) accessors and
// row spans; callers never depend on the storage order.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> diag);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Vec column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const double> values);

  DenseMatrix transposed() const;
  // Rows picked by index, in the given order.
  DenseMatrix select_rows(std::span<const std::size_t> indices) const;

  bool all_finite() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
Vec add(std::span<const double> x, std::span<const double> y);
Vec subtract(std::span<const double> x, std::span<const double> y);
Vec scaled(double a, std::span<const double> x);
bool all_finite(std::span<const double> x);

Vec multiply(const DenseMatrix& a, std::span<const double> v);
Vec multiply_transposed(const DenseMatrix& a, std::span<const double> u);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
// a^T a
DenseMatrix gram(const DenseMatrix& a);

double frobenius_norm(const DenseMatrix& a);
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

using LinearOperator = std::function<Vec(std::span<const double>)>;

struct CgReport {
  Vec solution;
  std::size_t iterations = 0;
  double final_residual_norm = 0.0;  // ||b - H x||_2, recomputed from the returned x
};

// Conjugate gradient from the zero vector. Stops after max_iter iterations or
// once ||b - Hx|| <= rel_tol * ||b||; rel_tol = 0 runs the full budget.
CgReport cg_solve(const LinearOperator& apply_h, std::span<const double> b, std::size_t max_iter,
                  double rel_tol);

class Cholesky {
 public:
  explicit Cholesky(const DenseMatrix& h);
  Vec solve(std::span<const double> b) const;
  std::size_t dim() const { return lower_.rows(); }

 private:
  DenseMatrix lower_;
};

Vec direct_spd_solve(const DenseMatrix& h, std::span<const double> b);

inline constexpr double kSpectralTol = 1e-9;
inline constexpr std::size_t kSpectralMaxIter = 10000;

// Largest eigenvalue of a symmetric positive semi-definite operator by power
// iteration from a fixed pseudo-random start.
double power_iteration(const LinearOperator& apply_spd, std::size_t dim, double tol = kSpectralTol,
                       std::size_t max_iter = kSpectralMaxIter);

// Largest singular value of a.
double spectral_norm(const DenseMatrix& a, double tol = kSpectralTol,
                     std::size_t max_iter = kSpectralMaxIter);

struct EigenRange {
  double min = 0.0;
  double max = 0.0;
  double condition() const { return max / min; }
};

// Extreme eigenvalues of an SPD matrix: power iteration for the top, inverse
// power iteration through a Cholesky factor for the bottom.
EigenRange spd_eigen_range(const DenseMatrix& h, double tol = kSpectralTol);

// Orthonormal basis of the column space by Gram-Schmidt with one
// re-orthogonalization pass. Columns whose residual norm is below
// 1e-12 * ||a||_F are dropped.
DenseMatrix thin_orthonormal_basis(const DenseMatrix& a);

}  // namespace giant
