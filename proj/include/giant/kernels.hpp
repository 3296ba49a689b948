#pragma once

// Data-parallel kernels over the sample dimension. The default versions split
// rows into fixed-size blocks and run blocks under OpenMP; partial results are
// combined in block order, so the output does not depend on the thread count.
// The serial:: versions are plain loops kept as the reference for tests and
// for the benchmark.

#include <cstddef>
#include <span>

#include "giant/linalg.hpp"

namespace giant::kernels {

inline constexpr std::size_t kRowBlock = 512;

// y = a v
Vec matvec(const DenseMatrix& a, std::span<const double> v);
// z = a^T u
Vec matvec_transposed(const DenseMatrix& a, std::span<const double> u);
// a^T (a v)
Vec gram_apply(const DenseMatrix& a, std::span<const double> v);
// a^T a
DenseMatrix gram(const DenseMatrix& a);

namespace serial {

Vec matvec(const DenseMatrix& a, std::span<const double> v);
Vec matvec_transposed(const DenseMatrix& a, std::span<const double> u);
Vec gram_apply(const DenseMatrix& a, std::span<const double> v);
DenseMatrix gram(const DenseMatrix& a);

}  // namespace serial

}  // namespace giant::kernels
