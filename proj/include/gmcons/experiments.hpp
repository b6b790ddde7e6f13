#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "gmcons/graph.hpp"

namespace gmcons {

struct ExperimentOptions {
  double lo = 0.01;   // open sampling interval for initial conditions
  double hi = 10.0;
  double dt = 1e-3;
  double t_end = 200.0;
  double consensus_tol = 1e-10;  // tighter than the simulation default so the
                                 // bound slack is dominated by the dynamics
  int record_stride = 100;
  int workers = 1;
};

struct TrialRecord {
  std::string family;  // "complete" or "regular"
  int n = 0;
  int d = 0;
  bool normalized = true;
  std::uint64_t seed = 0;  // per-trial RNG seed (master ^ trial index)
  int trial = 0;
  std::vector<double> x0;
  double xbar = 0.0;
  double am0 = 0.0;
  double gm0 = 0.0;
  double agm0 = 0.0;  // agm(am0, gm0)
  double r_am = 0.0, r_gm = 0.0, r_agm = 0.0;  // ref / xbar
  bool viol_upper = false;  // xbar above am0 + slack
  bool viol_lower = false;  // xbar below agm0 - slack
  bool hull_ok = true;      // max nonincreasing, min nondecreasing along the run
  bool bracket_ok = true;   // min x0 < xbar < max x0
};

struct ConfigSummary {
  std::string family;
  int n = 0;
  int d = 0;
  bool normalized = true;
  int trials = 0;
  int upper_violations = 0;
  int lower_violations = 0;
};

struct ExperimentReport {
  std::vector<TrialRecord> trials;
  std::vector<ConfigSummary> configs;
  int upper_violations = 0;
  int lower_violations = 0;
};

/// Draw x0 with am(x0) = c1 and gm(x0) = c2 (each within 1e-10) and all
/// components inside the open interval (lo, hi). A uniform draw z is bent by
/// the two-parameter family x = α z^β: β is found by bisection on the
/// scale-free ratio am/gm (equal to 1 at β = 0 and increasing), α then sets
/// the scale. Draws leaving the interval are rejected, up to 1000 redraws.
std::vector<double> sample_constrained_x0(int n, double c1, double c2, double lo, double hi,
                                          std::uint64_t seed);

/// Polynomial protocol on normalized complete graphs, one batch of sampled
/// initial conditions per node count. Flags consensus values outside
/// [agm(c1,c2) - 1e-6, c1 + 1e-6].
ExperimentReport run_complete_graph_sweep(const std::vector<int>& n_range, int trials_per_n,
                                          double c1, double c2, std::uint64_t seed,
                                          const ExperimentOptions& opt = {});

/// Polynomial protocol on the normalized complete graph with unconstrained
/// uniform initial conditions; records the am/gm/agm-to-consensus ratios and
/// counts violations of am/x̄ >= 1 and agm/x̄ <= 1 (slack 1e-9).
ExperimentReport run_ratio_experiment(int n, int trials, double lo, double hi,
                                      std::uint64_t seed, const ExperimentOptions& opt = {});

/// Polynomial protocol on (n,d)-regular circulants over a range of degrees,
/// normalized or unit weights. Lower-bound violations are counted either way;
/// they are expected only in the non-normalized case.
ExperimentReport run_regular_graph_experiment(int n, const std::vector<int>& d_range,
                                              int trials_per_d, bool normalized,
                                              std::uint64_t seed,
                                              const ExperimentOptions& opt = {});

/// CSV: family,n,d,normalized,seed,trial,xbar,am0,gm0,agm0,r_am,r_gm,r_agm,
/// viol_upper,viol_lower
void write_experiment_csv(std::ostream& os, const ExperimentReport& report);

}  // namespace gmcons
