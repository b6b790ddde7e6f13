#pragma once

#include <cstddef>

namespace gmcons::kernels::detail {

struct KernelTable {
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*minmax)(const double*, std::size_t, double*, double*);
  void (*vlog)(const double*, double*, std::size_t);
  void (*vexp)(const double*, double*, std::size_t);
  void (*vmul)(const double*, const double*, double*, std::size_t);
  void (*vsub)(const double*, const double*, double*, std::size_t);
  void (*vscale)(double, const double*, double*, std::size_t);
  void (*vaxpy)(double, const double*, double*, std::size_t);
  void (*vmadd)(const double*, double, const double*, double*, std::size_t);
  void (*matvec)(const double*, std::size_t, std::size_t, const double*, double*);
};

extern const KernelTable scalar_table;

#if GMCONS_HAVE_AVX2
extern const KernelTable avx2_table;
#endif

}  // namespace gmcons::kernels::detail
