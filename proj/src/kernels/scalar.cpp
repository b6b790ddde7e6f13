// Scalar reference kernels. These define the semantics the SIMD variants are
// tested against: strict left-to-right accumulation for reductions, libm for
// log/exp, plain mul/add (no fused ops) for the elementwise primitives.

#include <cmath>
#include <cstddef>

#include "table.hpp"

namespace gmcons::kernels::detail {
namespace {

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void minmax_scalar(const double* x, std::size_t n, double* mn, double* mx) {
  double lo = x[0], hi = x[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (x[i] < lo) lo = x[i];
    if (x[i] > hi) hi = x[i];
  }
  *mn = lo;
  *mx = hi;
}

void vlog_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::log(x[i]);
}

void vexp_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

void vmul_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void vsub_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void vscale_scalar(double s, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = s * x[i];
}

void vaxpy_scalar(double s, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + s * x[i];
}

void vmadd_scalar(const double* x, double s, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + s * y[i];
}

void matvec_scalar(const double* a, std::size_t rows, std::size_t cols, const double* x,
                   double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a + i * cols;
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

}  // namespace

const KernelTable scalar_table = {
    sum_scalar, dot_scalar, minmax_scalar, vlog_scalar,  vexp_scalar,  vmul_scalar,
    vsub_scalar, vscale_scalar, vaxpy_scalar, vmadd_scalar, matvec_scalar,
};

}  // namespace gmcons::kernels::detail
