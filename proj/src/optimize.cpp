#include "gmcons/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "gmcons/kernels.hpp"

namespace gmcons {

namespace {

void require_positive(std::span<const double> v) {
  for (double a : v)
    if (!(a > 0.0)) throw NonPositiveInput();
}

// F(e^u ‖ 1) with c = n
double objective(std::span<const double> u) {
  double s = 0.0;
  for (double ui : u) s += std::exp(ui) * (ui - 1.0);
  return s + static_cast<double>(u.size());
}

// d/du_i F(e^u) = e^{u_i} u_i
void gradient(std::span<const double> u, std::span<double> g) {
  for (std::size_t i = 0; i < u.size(); ++i) g[i] = std::exp(u[i]) * u[i];
}

}  // namespace

GmVariationalSolution solve_gm_variational(std::span<const double> x, double tol,
                                           long max_iter) {
  if (x.empty()) throw EmptyInput();
  require_positive(x);
  if (!(tol > 0.0)) throw Error("tol must be positive");

  const std::size_t n = x.size();
  std::vector<double> u(n), g(n), gp(n), trial(n);
  kernels::vlog(x, u);
  const double target = kernels::sum(u);

  auto recenter = [&](std::span<double> v) {
    const double shift = (target - kernels::sum(v)) / static_cast<double>(n);
    for (double& vi : v) vi += shift;
  };

  GmVariationalSolution sol;
  double f = objective(u);
  double step = 1.0;
  long it = 0;
  for (; it < max_iter; ++it) {
    gradient(u, g);
    const double gmean = kernels::sum(g) / static_cast<double>(n);
    double gnorm = 0.0, gsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      gp[i] = g[i] - gmean;
      gnorm = std::max(gnorm, std::abs(gp[i]));
      gsq += gp[i] * gp[i];
    }
    if (gnorm <= tol) break;

    double t = std::min(step, 1.0 / (1.0 + gnorm));
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      kernels::vmadd(u, -t, gp, trial);
      recenter(trial);
      const double ft = objective(trial);
      if (ft <= f - 1e-4 * t * gsq) {
        u = trial;
        if (ft > f + 1e-12) sol.objective_monotone = false;
        f = ft;
        accepted = true;
        break;
      }
      t /= 2.0;
    }
    if (!accepted) throw NoConvergence(it);
    step = 2.0 * t;
    sol.max_feasibility_drift =
        std::max(sol.max_feasibility_drift, std::abs(kernels::sum(u) - target));
  }
  if (it == max_iter) throw NoConvergence(max_iter);

  sol.iterations = it;
  sol.y_star.resize(n);
  kernels::vexp(u, sol.y_star);

  // post hoc: the stationary point must be a consensus vector
  auto [lo, hi] = kernels::minmax(sol.y_star);
  if (hi - lo > 1e-6 * std::max(1.0, hi)) throw NoConvergence(it);

  // recover the multiplier from the stationarity equation at the largest
  // component (avoids dividing by near-zero partial products)
  std::size_t imax = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (sol.y_star[i] > sol.y_star[imax]) imax = i;
  const double yi = sol.y_star[imax];
  const double prod_rest = std::exp(target - std::log(yi));
  sol.lagrange_multiplier = std::log(yi) / prod_rest;
  sol.kkt_residual = kkt_residual(sol.y_star, sol.lagrange_multiplier, x);
  return sol;
}

double kkt_residual(std::span<const double> y, double lambda, std::span<const double> x) {
  if (y.size() != x.size()) throw LengthMismatch(y.size(), x.size());
  require_positive(y);
  require_positive(x);
  const std::size_t n = x.size();
  std::vector<double> ly(n), lx(n);
  kernels::vlog(y, ly);
  kernels::vlog(x, lx);
  const double sy = kernels::sum(ly);
  const double sx = kernels::sum(lx);
  const double prod_x = std::exp(sx);
  const double prod_y = std::exp(sy);

  double r = std::abs(prod_x - prod_y) / std::max(1.0, prod_x);
  for (std::size_t i = 0; i < n; ++i) {
    const double partial = std::exp(sy - ly[i]);  // Π_{j≠i} y_j
    r = std::max(r, std::abs(ly[i] - lambda * partial));
  }
  return r;
}

double solution_characteristic_residual(std::span<const double> y) {
  if (y.empty()) throw EmptyInput();
  require_positive(y);
  double lo = y[0] * std::log(y[0]), hi = lo;
  for (double v : y) {
    const double h = v * std::log(v);
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  return hi - lo;
}

}  // namespace gmcons
