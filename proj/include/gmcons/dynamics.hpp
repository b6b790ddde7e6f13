#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gmcons/graph.hpp"
#include "gmcons/protocols.hpp"

namespace gmcons {

enum class Method { Rk4Fixed, Rk4AdaptivePositivity };

struct IntegratorConfig {
  double dt = 1e-3;
  double t_end = 50.0;
  double consensus_tol = 1e-8;
  double min_dt = 1e-12;
  int record_stride = 10;
  Method method = Method::Rk4AdaptivePositivity;

  void validate() const;
};

enum class Termination { Consensus, Horizon, Failure };

/// Recorded solution samples plus the detected outcome. Every stored state is
/// strictly positive and times are strictly increasing.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  Termination terminated_by = Termination::Horizon;
  std::optional<double> consensus_value;  // present iff terminated_by == Consensus
  double consensus_tol = 0.0;
  std::vector<std::string> warnings;

  std::size_t samples() const noexcept { return times.size(); }
  int n() const noexcept { return states.empty() ? 0 : static_cast<int>(states[0].size()); }
};

/// Classical RK4 with a positivity guard: a step whose stage values or result
/// leave the positive orthant is rejected and dt halved (adaptive method), or
/// terminates the trajectory (fixed method). dt grows back toward the
/// configured value after 10 accepted steps. Integration stops at consensus
/// (spread <= consensus_tol) or at the horizon.
Trajectory integrate(Protocol kind, const WeightedDigraph& g, std::span<const double> x0,
                     const IntegratorConfig& cfg = {});

/// max x - min x; the Lyapunov quantity all protocols contract.
double spread(std::span<const double> x);

/// Flow invariant for the protocol on this graph: q̂·ln x for the entropic
/// protocol, q̂·x for the linear / scaling-invariant family; absent for the
/// polynomial protocol and the sine interaction.
std::optional<double> conserved_quantity(Protocol kind, const WeightedDigraph& g,
                                         std::span<const double> x);
std::optional<double> conserved_quantity(Protocol kind, const PerronVector& q,
                                         std::span<const double> x);

/// Least-squares slope of ln spread(t) over recorded samples with spread
/// above the consensus tolerance. Needs at least 10 such samples.
double convergence_rate(const Trajectory& traj);

struct HullAudit {
  bool max_nonincreasing = true;
  bool min_nondecreasing = true;
  double worst_violation = 0.0;
};

/// Sample-to-sample monotonicity of the state hull along the trajectory.
HullAudit audit_hull(const Trajectory& traj, double slack = 1e-9);

/// CSV rows `t,x0,...,x{n-1},spread,conserved`; the conserved column is empty
/// for protocols without a known invariant or graphs without a Perron vector.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, Protocol kind,
                          const WeightedDigraph& g);

}  // namespace gmcons
