#pragma once

#include <span>
#include <vector>

#include "gmcons/errors.hpp"

namespace gmcons {

/// Metrics on the positive half line used for variational means and for the
/// pairwise-interaction protocols. Sine is only meaningful for the latter.
enum class Metric { Euclidean, Hyperbolic, Sine };

/// Positive weights normalized to unit 1-norm.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> w);

  std::span<const double> values() const noexcept { return w_; }
  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }

  static WeightVector uniform(std::size_t n);

 private:
  std::vector<double> w_;
};

double am(std::span<const double> x);
double gm(std::span<const double> x);

double am_w(std::span<const double> x, const WeightVector& w);
double gm_w(std::span<const double> x, const WeightVector& w);

/// Logarithmic mean (a-b)/(ln a - ln b), continuously extended near a = b by
/// the midpoint once |a-b| <= 1e-9 max(a,b).
double lgm(double a, double b);

/// Arithmetic-geometric mean: the common limit of the (am, gm) pair
/// iteration. Optional trace receives the iterates (a_k, b_k).
double agm(double a, double b, double tol = 1e-14,
           std::vector<std::pair<double, double>>* trace = nullptr);

/// I(a,b) = ∫_0^{π/2} dφ / sqrt(a² cos²φ + b² sin²φ), adaptive Simpson with
/// absolute tolerance 1e-12; satisfies agm(a,b)·I(a,b) = π/2.
double elliptic_integral(double a, double b);

/// |ln a - ln b|
double hyperbolic_distance(double a, double b);

/// argmin_m Σ d(x_i, m)² over [min x, max x] by golden-section search; the
/// objective is unimodal for the two supported metrics. tol bounds the
/// bracket width at termination.
double mean_from_metric(std::span<const double> x, Metric metric, double tol = 1e-12);

}  // namespace gmcons
