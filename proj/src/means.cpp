#include "gmcons/means.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gmcons/kernels.hpp"

namespace gmcons {

namespace {

void require_positive(std::span<const double> x) {
  for (double v : x)
    if (!(v > 0.0)) throw NonPositiveInput();
}

void require_nonempty(std::span<const double> x) {
  if (x.empty()) throw EmptyInput();
}

}  // namespace

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  if (w_.empty()) throw EmptyInput();
  for (double v : w_)
    if (!(v > 0.0)) throw NonPositiveInput("weights must be strictly positive");
  const double norm = kernels::sum(w_);
  kernels::vscale(1.0 / norm, w_, w_);
}

WeightVector WeightVector::uniform(std::size_t n) {
  return WeightVector(std::vector<double>(n, 1.0));
}

double am(std::span<const double> x) {
  require_nonempty(x);
  return kernels::sum(x) / static_cast<double>(x.size());
}

double gm(std::span<const double> x) {
  require_nonempty(x);
  require_positive(x);
  std::vector<double> logs(x.size());
  kernels::vlog(x, logs);
  return std::exp(kernels::sum(logs) / static_cast<double>(x.size()));
}

double am_w(std::span<const double> x, const WeightVector& w) {
  require_nonempty(x);
  if (x.size() != w.size()) throw LengthMismatch(x.size(), w.size());
  return kernels::dot(x, w.values());
}

double gm_w(std::span<const double> x, const WeightVector& w) {
  require_nonempty(x);
  if (x.size() != w.size()) throw LengthMismatch(x.size(), w.size());
  require_positive(x);
  std::vector<double> logs(x.size());
  kernels::vlog(x, logs);
  return std::exp(kernels::dot(logs, w.values()));
}

double lgm(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw NonPositiveInput();
  if (std::abs(a - b) <= 1e-9 * std::max(a, b)) return 0.5 * (a + b);
  return (a - b) / (std::log(a) - std::log(b));
}

double agm(double a, double b, double tol, std::vector<std::pair<double, double>>* trace) {
  if (!(a > 0.0) || !(b > 0.0)) throw NonPositiveInput();
  if (a < b) std::swap(a, b);
  if (trace) trace->push_back({a, b});
  for (int k = 0; k < 60 && (a - b) > tol; ++k) {
    double an = 0.5 * (a + b);
    double bn = std::sqrt(a * b);
    a = an;
    b = bn;
    if (trace) trace->push_back({a, b});
  }
  return 0.5 * (a + b);
}

namespace {

double simpson(double (*f)(double, double, double), double a2, double b2, double lo, double hi,
               double flo, double fmid, double fhi, double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lmid = 0.5 * (lo + mid);
  const double rmid = 0.5 * (mid + hi);
  const double flm = f(lmid, a2, b2);
  const double frm = f(rmid, a2, b2);
  const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
  const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson(f, a2, b2, lo, mid, flo, flm, fmid, left, tol / 2.0, depth - 1) +
         simpson(f, a2, b2, mid, hi, fmid, frm, fhi, right, tol / 2.0, depth - 1);
}

double elliptic_integrand(double phi, double a2, double b2) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return 1.0 / std::sqrt(a2 * c * c + b2 * s * s);
}

}  // namespace

double elliptic_integral(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw NonPositiveInput();
  const double a2 = a * a, b2 = b * b;
  const double lo = 0.0, hi = std::numbers::pi / 2.0;
  const double mid = 0.5 * (lo + hi);
  const double flo = elliptic_integrand(lo, a2, b2);
  const double fmid = elliptic_integrand(mid, a2, b2);
  const double fhi = elliptic_integrand(hi, a2, b2);
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  return simpson(elliptic_integrand, a2, b2, lo, hi, flo, fmid, fhi, whole, 1e-12, 60);
}

double hyperbolic_distance(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw NonPositiveInput();
  return std::abs(std::log(a) - std::log(b));
}

namespace {

double metric_objective(std::span<const double> x, Metric metric, double m) {
  double s = 0.0;
  for (double v : x) {
    double d = metric == Metric::Euclidean ? std::abs(v - m) : hyperbolic_distance(v, m);
    s += d * d;
  }
  return s;
}

}  // namespace

double mean_from_metric(std::span<const double> x, Metric metric, double tol) {
  require_nonempty(x);
  if (metric != Metric::Euclidean && metric != Metric::Hyperbolic) throw UnsupportedMetric();
  if (metric == Metric::Hyperbolic) require_positive(x);
  auto [lo, hi] = kernels::minmax(x);
  if (lo == hi) return lo;

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  double fc = metric_objective(x, metric, c);
  double fd = metric_objective(x, metric, d);
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = metric_objective(x, metric, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = metric_objective(x, metric, d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gmcons
