#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "gmcons/kernels.hpp"
#include "support/random_graphs.hpp"

using namespace gmcons;
namespace ts = gmcons::testsupport;

namespace {

// run fn under both backends, return the two results
template <typename F>
auto both_backends(F&& fn) {
  const auto saved = kernels::active_backend();
  kernels::set_backend(kernels::Backend::Scalar);
  auto scalar = fn();
  std::pair<decltype(scalar), decltype(scalar)> out{scalar, scalar};
  if (kernels::backend_supported(kernels::Backend::Avx2)) {
    kernels::set_backend(kernels::Backend::Avx2);
    out.second = fn();
  }
  kernels::set_backend(saved);
  return out;
}

double ulp_distance(double a, double b) {
  if (a == b) return 0.0;
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / (scale * 2.220446049250313e-16);
}

const std::vector<std::size_t> kSizes = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 64, 257};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("backend roundtrip and names") {
  const auto saved = kernels::active_backend();
  kernels::select_backend_by_name("scalar");
  CHECK(kernels::active_backend() == kernels::Backend::Scalar);
  CHECK(kernels::backend_name(kernels::active_backend()) == "scalar");
  kernels::select_backend_by_name("auto");
  CHECK_THROWS(kernels::select_backend_by_name("mmx"));
  kernels::set_backend(saved);
}

TEST_CASE("elementwise ops bit-identical across backends") {
  std::mt19937_64 rng(11);
  for (std::size_t n : kSizes) {
    std::vector<double> a = ts::random_state(rng, static_cast<int>(n), -8.0, 8.0);
    std::vector<double> b = ts::random_state(rng, static_cast<int>(n), -8.0, 8.0);
    const double s = ts::uniform_in(rng, -3.0, 3.0);

    auto apply_all = [&] {
      std::vector<double> out(5 * n);
      std::span<double> mul(out.data(), n), sub(out.data() + n, n),
          scale(out.data() + 2 * n, n), madd(out.data() + 3 * n, n), axpy(out.data() + 4 * n, n);
      kernels::vmul(a, b, mul);
      kernels::vsub(a, b, sub);
      kernels::vscale(s, a, scale);
      kernels::vmadd(a, s, b, madd);
      std::copy(a.begin(), a.end(), axpy.begin());
      kernels::vaxpy(s, b, axpy);
      return out;
    };
    auto [ref, simd] = both_backends(apply_all);
    CHECK(std::memcmp(ref.data(), simd.data(), ref.size() * sizeof(double)) == 0);
  }
}

TEST_CASE("minmax bit-identical across backends") {
  std::mt19937_64 rng(12);
  for (std::size_t n : kSizes) {
    if (n == 0) continue;
    std::vector<double> a = ts::random_state(rng, static_cast<int>(n), -100.0, 100.0);
    auto [ref, simd] = both_backends([&] { return kernels::minmax(a); });
    CHECK(ref.first == simd.first);
    CHECK(ref.second == simd.second);
  }
}

TEST_CASE("reductions match scalar reference to tight relative tolerance") {
  std::mt19937_64 rng(13);
  for (std::size_t n : kSizes) {
    std::vector<double> a = ts::random_state(rng, static_cast<int>(n), 0.1, 10.0);
    std::vector<double> b = ts::random_state(rng, static_cast<int>(n), -2.0, 2.0);
    auto [s1, s2] = both_backends([&] { return kernels::sum(a); });
    CHECK(std::abs(s1 - s2) <= 1e-13 * std::max(1.0, std::abs(s1)));
    auto [d1, d2] = both_backends([&] { return kernels::dot(a, b); });
    CHECK(std::abs(d1 - d2) <= 1e-13 * std::max(1.0, std::abs(d1)));
  }
}

TEST_CASE("matvec agrees across backends") {
  std::mt19937_64 rng(14);
  for (std::size_t n : {1u, 3u, 5u, 12u, 33u}) {
    std::vector<double> mat = ts::random_state(rng, static_cast<int>(n * n), -2.0, 2.0);
    std::vector<double> x = ts::random_state(rng, static_cast<int>(n), -2.0, 2.0);
    auto apply = [&] {
      std::vector<double> y(n);
      kernels::matvec(mat.data(), n, n, x.data(), y.data());
      return y;
    };
    auto [ref, simd] = both_backends(apply);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(ref[i] - simd[i]) <= 1e-13 * std::max(1.0, std::abs(ref[i])));
  }
}

TEST_CASE("vlog matches std::log to a few ulp") {
  std::mt19937_64 rng(15);
  std::vector<double> xs;
  for (int k = 0; k < 4000; ++k) xs.push_back(std::exp(ts::uniform_in(rng, -300.0, 300.0)));
  for (double v : {1.0, 2.0, 0.5, 1e-300, 1e300, 0.9999999999, 1.0000000001}) xs.push_back(v);

  std::vector<double> out(xs.size());
  auto run = [&] {
    kernels::vlog(xs, out);
    return out;
  };
  auto [ref, simd] = both_backends(run);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(ulp_distance(ref[i], std::log(xs[i])) == 0.0);
    CHECK(ulp_distance(simd[i], std::log(xs[i])) <= 4.0);
  }
}

TEST_CASE("vlog special values match libm") {
  std::vector<double> xs = {0.0, -1.0, 5e-324, 1e-320,
                            std::numeric_limits<double>::infinity(),
                            std::numeric_limits<double>::quiet_NaN()};
  std::vector<double> out(xs.size());
  auto run = [&] {
    kernels::vlog(xs, out);
    return out;
  };
  auto [ref, simd] = both_backends(run);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double expect = std::log(xs[i]);
    if (std::isnan(expect)) {
      CHECK(std::isnan(ref[i]));
      CHECK(std::isnan(simd[i]));
    } else {
      CHECK(ref[i] == expect);
      CHECK(simd[i] == expect);
    }
  }
}

TEST_CASE("vexp matches std::exp to a few ulp") {
  std::mt19937_64 rng(16);
  std::vector<double> xs;
  for (int k = 0; k < 4000; ++k) xs.push_back(ts::uniform_in(rng, -700.0, 700.0));
  for (double v : {0.0, 1.0, -1.0, 709.0, -745.0, 1000.0, -1000.0,
                   std::numeric_limits<double>::infinity(),
                   -std::numeric_limits<double>::infinity()})
    xs.push_back(v);

  std::vector<double> out(xs.size());
  auto run = [&] {
    kernels::vexp(xs, out);
    return out;
  };
  auto [ref, simd] = both_backends(run);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(ulp_distance(ref[i], std::exp(xs[i])) == 0.0);
    CHECK(ulp_distance(simd[i], std::exp(xs[i])) <= 4.0);
  }
}

TEST_CASE("exp(log x) round trip stays tight") {
  std::mt19937_64 rng(17);
  std::vector<double> x = ts::random_state(rng, 512, 0.01, 100.0);
  std::vector<double> u(x.size()), back(x.size());
  auto run = [&] {
    kernels::vlog(x, u);
    kernels::vexp(u, back);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      worst = std::max(worst, std::abs(back[i] - x[i]) / x[i]);
    return worst;
  };
  auto [ref, simd] = both_backends(run);
  CHECK(ref <= 1e-15);
  CHECK(simd <= 1e-14);
}

}  // TEST_SUITE
