#include "gmcons/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

#include "gmcons/dynamics.hpp"
#include "gmcons/kernels.hpp"
#include "gmcons/means.hpp"

namespace gmcons {

namespace {

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

// ln am(z^beta) - ln gm(z^beta) for u = ln z, computed in log space so that
// arbitrarily large beta stays finite
double log_ratio(const std::vector<double>& u, double beta) {
  const double umax = *std::max_element(u.begin(), u.end());
  double s = 0.0, mean_u = 0.0;
  for (double ui : u) {
    s += std::exp(beta * (ui - umax));
    mean_u += ui;
  }
  mean_u /= static_cast<double>(u.size());
  const double log_am = beta * umax + std::log(s / static_cast<double>(u.size()));
  return log_am - beta * mean_u;
}

}  // namespace

std::vector<double> sample_constrained_x0(int n, double c1, double c2, double lo, double hi,
                                          std::uint64_t seed) {
  if (n < 2) throw Error("sampler needs n >= 2");
  if (!(c2 > 0.0) || !(c2 < c1)) throw InfeasibleTarget("need 0 < c2 < c1");
  if (!(lo > 0.0) || !(lo < c2) || !(hi > c1))
    throw InfeasibleTarget("need 0 < lo < c2 and hi > c1");

  std::mt19937_64 rng(seed);
  const double target = std::log(c1 / c2);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> u(n);
    for (double& ui : u) ui = std::log(uniform_in(rng, lo, hi));

    if (log_ratio(u, 0.0) > 1e-15) throw BadBracket("ratio not 1 at beta = 0");

    double b_hi = 1.0;
    bool bracketed = false;
    for (int k = 0; k < 60; ++k) {
      if (log_ratio(u, b_hi) >= target) {
        bracketed = true;
        break;
      }
      b_hi *= 2.0;
    }
    if (!bracketed) continue;  // nearly uniform draw; try again

    double b_lo = 0.0;
    double beta = b_hi;
    for (int k = 0; k < 200; ++k) {
      beta = 0.5 * (b_lo + b_hi);
      const double r = log_ratio(u, beta);
      if (std::abs(std::exp(r) * c2 - c1) <= 1e-12 * c1) break;
      (r < target ? b_lo : b_hi) = beta;
    }

    // scale so the arithmetic mean hits c1
    const double umax = *std::max_element(u.begin(), u.end());
    double s = 0.0;
    for (double ui : u) s += std::exp(beta * (ui - umax));
    const double log_am = beta * umax + std::log(s / n);
    const double log_alpha = std::log(c1) - log_am;

    std::vector<double> x(n);
    bool in_range = true;
    for (int i = 0; i < n; ++i) {
      x[i] = std::exp(log_alpha + beta * u[i]);
      if (!(x[i] > lo) || !(x[i] < hi)) in_range = false;
    }
    if (!in_range) continue;
    if (std::abs(am(x) - c1) > 1e-10 || std::abs(gm(x) - c2) > 1e-10) continue;
    return x;
  }
  throw InfeasibleTarget("no admissible sample after 1000 redraws");
}

namespace {

TrialRecord run_polynomial_trial(const WeightedDigraph& g, std::string family, int n, int d,
                                 bool normalized, std::vector<double> x0, std::uint64_t seed,
                                 int trial, double slack, const ExperimentOptions& opt) {
  IntegratorConfig cfg;
  cfg.dt = opt.dt;
  cfg.t_end = opt.t_end;
  cfg.consensus_tol = opt.consensus_tol;
  cfg.record_stride = opt.record_stride;

  Trajectory traj = integrate(Protocol::polynomial(), g, x0, cfg);
  if (traj.terminated_by != Termination::Consensus)
    throw Error("trial " + std::to_string(trial) + " did not reach consensus");

  TrialRecord rec;
  rec.family = std::move(family);
  rec.n = n;
  rec.d = d;
  rec.normalized = normalized;
  rec.seed = seed;
  rec.trial = trial;
  rec.xbar = *traj.consensus_value;
  rec.am0 = am(x0);
  rec.gm0 = gm(x0);
  rec.agm0 = agm(rec.am0, rec.gm0);
  rec.r_am = rec.am0 / rec.xbar;
  rec.r_gm = rec.gm0 / rec.xbar;
  rec.r_agm = rec.agm0 / rec.xbar;
  rec.viol_upper = rec.xbar > rec.am0 + slack;
  rec.viol_lower = rec.xbar < rec.agm0 - slack;

  HullAudit hull = audit_hull(traj);
  rec.hull_ok = hull.max_nonincreasing && hull.min_nondecreasing;
  auto [lo0, hi0] = kernels::minmax(x0);
  rec.bracket_ok = lo0 < rec.xbar && rec.xbar < hi0;
  rec.x0 = std::move(x0);
  return rec;
}

std::vector<TrialRecord> run_parallel(int total, int workers,
                                      const std::function<TrialRecord(int)>& make) {
  std::vector<TrialRecord> records(total);
  if (workers <= 1) {
    for (int i = 0; i < total; ++i) records[i] = make(i);
    return records;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= total) return;
      try {
        records[i] = make(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min(workers, total);
  pool.reserve(count);
  for (int w = 0; w < count; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

void summarize(ExperimentReport& rep) {
  for (const TrialRecord& r : rep.trials) {
    auto it = std::find_if(rep.configs.begin(), rep.configs.end(), [&](const ConfigSummary& c) {
      return c.family == r.family && c.n == r.n && c.d == r.d && c.normalized == r.normalized;
    });
    if (it == rep.configs.end()) {
      rep.configs.push_back({r.family, r.n, r.d, r.normalized, 0, 0, 0});
      it = rep.configs.end() - 1;
    }
    ++it->trials;
    if (r.viol_upper) {
      ++it->upper_violations;
      ++rep.upper_violations;
    }
    if (r.viol_lower) {
      ++it->lower_violations;
      ++rep.lower_violations;
    }
  }
}

}  // namespace

ExperimentReport run_complete_graph_sweep(const std::vector<int>& n_range, int trials_per_n,
                                          double c1, double c2, std::uint64_t seed,
                                          const ExperimentOptions& opt) {
  const double slack = 1e-6;
  struct Task {
    int n;
    int offset;
  };
  std::vector<Task> tasks;
  int total = 0;
  for (int n : n_range) {
    if (n < 2) throw Error("sweep needs n >= 2");
    tasks.push_back({n, total});
    total += trials_per_n;
  }

  std::vector<WeightedDigraph> graphs;
  graphs.reserve(tasks.size());
  for (const Task& t : tasks) graphs.push_back(generate_complete(t.n, true));

  auto make = [&](int index) {
    std::size_t which = 0;
    while (which + 1 < tasks.size() && tasks[which + 1].offset <= index) ++which;
    const int n = tasks[which].n;
    const std::uint64_t trial_seed = seed ^ static_cast<std::uint64_t>(index);
    std::vector<double> x0 = sample_constrained_x0(n, c1, c2, opt.lo, opt.hi, trial_seed);
    return run_polynomial_trial(graphs[which], "complete", n, n - 1, true, std::move(x0),
                                trial_seed, index, slack, opt);
  };

  ExperimentReport rep;
  rep.trials = run_parallel(total, opt.workers, make);
  summarize(rep);
  return rep;
}

ExperimentReport run_ratio_experiment(int n, int trials, double lo, double hi,
                                      std::uint64_t seed, const ExperimentOptions& opt) {
  if (n < 2) throw Error("ratio experiment needs n >= 2");
  const double slack = 1e-9;
  WeightedDigraph g = generate_complete(n, true);

  auto make = [&](int index) {
    const std::uint64_t trial_seed = seed ^ static_cast<std::uint64_t>(index);
    std::mt19937_64 rng(trial_seed);
    std::vector<double> x0(n);
    for (double& v : x0) v = uniform_in(rng, lo, hi);
    return run_polynomial_trial(g, "complete", n, n - 1, true, std::move(x0), trial_seed,
                                index, slack, opt);
  };

  ExperimentReport rep;
  rep.trials = run_parallel(trials, opt.workers, make);
  summarize(rep);
  return rep;
}

ExperimentReport run_regular_graph_experiment(int n, const std::vector<int>& d_range,
                                              int trials_per_d, bool normalized,
                                              std::uint64_t seed,
                                              const ExperimentOptions& opt) {
  const double slack = 1e-9;
  struct Task {
    int d;
    int offset;
  };
  std::vector<Task> tasks;
  int total = 0;
  for (int d : d_range) {
    tasks.push_back({d, total});
    total += trials_per_d;
  }

  std::vector<WeightedDigraph> graphs;
  graphs.reserve(tasks.size());
  for (const Task& t : tasks) graphs.push_back(generate_regular(n, t.d, normalized, seed));

  auto make = [&](int index) {
    std::size_t which = 0;
    while (which + 1 < tasks.size() && tasks[which + 1].offset <= index) ++which;
    const std::uint64_t trial_seed = seed ^ static_cast<std::uint64_t>(index);
    std::mt19937_64 rng(trial_seed);
    std::vector<double> x0(n);
    for (double& v : x0) v = uniform_in(rng, opt.lo, opt.hi);
    return run_polynomial_trial(graphs[which], "regular", n, tasks[which].d, normalized,
                                std::move(x0), trial_seed, index, slack, opt);
  };

  ExperimentReport rep;
  rep.trials = run_parallel(total, opt.workers, make);
  summarize(rep);
  return rep;
}

void write_experiment_csv(std::ostream& os, const ExperimentReport& report) {
  os << "family,n,d,normalized,seed,trial,xbar,am0,gm0,agm0,r_am,r_gm,r_agm,"
        "viol_upper,viol_lower\n";
  char buf[512];
  for (const TrialRecord& r : report.trials) {
    std::snprintf(buf, sizeof(buf),
                  "%s,%d,%d,%d,%llu,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d\n",
                  r.family.c_str(), r.n, r.d, r.normalized ? 1 : 0,
                  static_cast<unsigned long long>(r.seed), r.trial, r.xbar, r.am0, r.gm0,
                  r.agm0, r.r_am, r.r_gm, r.r_agm, r.viol_upper ? 1 : 0, r.viol_lower ? 1 : 0);
    os << buf;
  }
}

}  // namespace gmcons
