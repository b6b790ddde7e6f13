#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "gmcons/dynamics.hpp"
#include "gmcons/graph.hpp"

namespace gmcons {

/// F(x‖y) = Σ x_i (ln(x_i/y_i) - 1) + c. With y = 1 and c = n this vanishes
/// at the all-ones state; restricted to unit-mass vectors with c = 1 it is
/// the relative entropy.
double free_energy(std::span<const double> x, std::span<const double> y, double c);

/// F(x‖1) with c = n.
double free_energy_uniform_ref(std::span<const double> x);

/// Σ x_i ln(x_i/y_i) for probability vectors (1-norms within 1e-9 of one).
double relative_entropy(std::span<const double> x, std::span<const double> y);

/// L ln x — the free-energy gradient projected onto the constant-mass
/// hyperplane. L must be a Laplacian (row sums ~ 0).
std::vector<double> projected_gradient(const Matrix& l, std::span<const double> x);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k is the unit eigenvector of values[k]
};

/// Cyclic Jacobi iteration for symmetric matrices. Throws NotSymmetric.
EigenDecomposition jacobi_eigen_symmetric(const Matrix& a, double tol = 1e-12);

/// ‖L x - Σ_k λ_k v_k (v_k·x)‖∞ for the symmetric Laplacian of a connected
/// graph, verifying on the way that λ₁ = 0 with eigenvector ∝ 1 and that all
/// other eigenvalues are positive.
double eigendecomposition_projection_residual(const Matrix& l_sym, std::span<const double> x);

struct EnergyReport {
  std::vector<double> times;
  std::vector<double> values;
  bool monotone = true;
  double max_uptick = 0.0;  // largest positive successive difference, 0 if monotone
};

/// Evaluates F(x(t)‖1, c = n) at the trajectory samples and reports whether
/// the sequence is non-increasing up to the slack.
EnergyReport audit_energy_descent(const Trajectory& traj, const WeightedDigraph& g,
                                  double slack = 1e-9);

/// CSV rows `t,free_energy`.
void write_energy_csv(std::ostream& os, const EnergyReport& report);

}  // namespace gmcons
