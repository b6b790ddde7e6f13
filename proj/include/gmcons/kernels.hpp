#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>

// Vector arithmetic primitives used by every numeric module. Each primitive
// has a scalar reference implementation and, on x86-64, an AVX2/FMA variant;
// the backend is chosen at runtime from CPU capabilities and can be pinned
// explicitly (useful for reproducing results across machines).
//
// Equivalence contract, enforced by the kernel tests:
//   - elementwise ops (vmul, vsub, vscale, vaxpy, vmadd) are bit-identical
//     across backends,
//   - reductions (sum, dot, matvec) agree to a small relative tolerance
//     (summation order differs),
//   - vlog/vexp agree with the scalar std::log/std::exp reference to a few
//     ulp,
//   - minmax is bit-identical.

namespace gmcons::kernels {

enum class Backend { Scalar, Avx2 };

/// Backend currently in use. First call performs CPU detection.
Backend active_backend();

/// Pin a backend. Throws std::runtime_error if unsupported on this CPU.
void set_backend(Backend b);

bool backend_supported(Backend b);

std::string_view backend_name(Backend b);

/// Parse "auto" / "scalar" / "avx2"; applies the choice immediately.
void select_backend_by_name(std::string_view name);

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);

/// (min, max) of a non-empty vector.
std::pair<double, double> minmax(std::span<const double> x);

void vlog(std::span<const double> x, std::span<double> out);
void vexp(std::span<const double> x, std::span<double> out);

/// out = a .* b   (aliasing with inputs allowed)
void vmul(std::span<const double> a, std::span<const double> b, std::span<double> out);
/// out = a - b
void vsub(std::span<const double> a, std::span<const double> b, std::span<double> out);
/// out = s * x
void vscale(double s, std::span<const double> x, std::span<double> out);
/// y += s * x
void vaxpy(double s, std::span<const double> x, std::span<double> y);
/// out = x + s * y
void vmadd(std::span<const double> x, double s, std::span<const double> y, std::span<double> out);

/// y = A x for a dense row-major rows x cols matrix.
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);

}  // namespace gmcons::kernels
