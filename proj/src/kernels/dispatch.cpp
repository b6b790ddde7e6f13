#include "gmcons/kernels.hpp"

#include <atomic>
#include <cassert>
#include <stdexcept>
#include <string>

#include "table.hpp"

namespace gmcons::kernels {
namespace {

using detail::KernelTable;

bool cpu_has_avx2() {
#if GMCONS_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return &detail::scalar_table;
    case Backend::Avx2:
#if GMCONS_HAVE_AVX2
      return &detail::avx2_table;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

struct State {
  std::atomic<const KernelTable*> table;
  std::atomic<Backend> backend;
  State() {
    Backend b = cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
    backend.store(b);
    table.store(table_for(b));
  }
};

State& state() {
  static State s;
  return s;
}

const KernelTable& active() { return *state().table.load(std::memory_order_relaxed); }

}  // namespace

Backend active_backend() { return state().backend.load(std::memory_order_relaxed); }

bool backend_supported(Backend b) {
  return b == Backend::Scalar || (b == Backend::Avx2 && cpu_has_avx2());
}

std::string_view backend_name(Backend b) {
  return b == Backend::Scalar ? "scalar" : "avx2";
}

void set_backend(Backend b) {
  if (!backend_supported(b))
    throw std::runtime_error(std::string("kernel backend unavailable: ") +
                             std::string(backend_name(b)));
  state().backend.store(b);
  state().table.store(table_for(b));
}

void select_backend_by_name(std::string_view name) {
  if (name == "auto") {
    set_backend(cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar);
  } else if (name == "scalar") {
    set_backend(Backend::Scalar);
  } else if (name == "avx2") {
    set_backend(Backend::Avx2);
  } else {
    throw std::runtime_error("unknown kernel backend: " + std::string(name));
  }
}

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return active().dot(x.data(), y.data(), x.size());
}

std::pair<double, double> minmax(std::span<const double> x) {
  assert(!x.empty());
  double lo, hi;
  active().minmax(x.data(), x.size(), &lo, &hi);
  return {lo, hi};
}

void vlog(std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  active().vlog(x.data(), out.data(), x.size());
}

void vexp(std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  active().vexp(x.data(), out.data(), x.size());
}

void vmul(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().vmul(a.data(), b.data(), out.data(), a.size());
}

void vsub(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().vsub(a.data(), b.data(), out.data(), a.size());
}

void vscale(double s, std::span<const double> x, std::span<double> out) {
  assert(x.size() == out.size());
  active().vscale(s, x.data(), out.data(), x.size());
}

void vaxpy(double s, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().vaxpy(s, x.data(), y.data(), x.size());
}

void vmadd(std::span<const double> x, double s, std::span<const double> y,
           std::span<double> out) {
  assert(x.size() == y.size() && x.size() == out.size());
  active().vmadd(x.data(), s, y.data(), out.data(), x.size());
}

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  active().matvec(a, rows, cols, x, y);
}

}  // namespace gmcons::kernels
