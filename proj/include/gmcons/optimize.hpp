#pragma once

#include <span>
#include <vector>

#include "gmcons/errors.hpp"

namespace gmcons {

struct GmVariationalSolution {
  std::vector<double> y_star;
  double lagrange_multiplier = 0.0;
  double kkt_residual = 0.0;
  long iterations = 0;
  double max_feasibility_drift = 0.0;  // worst |Σ ln y - Σ ln x| seen while iterating
  bool objective_monotone = true;      // free energy non-increasing across accepted steps
};

/// Minimize F(y‖1) subject to Π y_i = Π x_i. Works in u = ln y, where the
/// constraint is the hyperplane Σ u_i = Σ ln x_i: projected gradient descent
/// with backtracking, started at u = ln x. The minimizer is the consensus
/// vector gm(x)·1 whenever gm(x) > 1/e; for smaller geometric means the
/// consensus point is not the constrained minimum and the solver reports
/// NoConvergence after the post-hoc consensus check fails.
GmVariationalSolution solve_gm_variational(std::span<const double> x, double tol = 1e-10,
                                           long max_iter = 200000);

/// ∞-norm over the n stationarity residuals |ln y_i - λ Π_{j≠i} y_j| and the
/// product-constraint residual |Π x - Π y| scaled by max(1, Π x).
double kkt_residual(std::span<const double> y, double lambda, std::span<const double> x);

/// max_i y_i ln y_i - min_i y_i ln y_i; zero exactly on consensus vectors.
double solution_characteristic_residual(std::span<const double> y);

}  // namespace gmcons
