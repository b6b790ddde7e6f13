#include "gmcons/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>

#include "gmcons/kernels.hpp"
#include "gmcons/means.hpp"

namespace gmcons {

void IntegratorConfig::validate() const {
  if (!(min_dt > 0.0) || !(min_dt <= dt)) throw Error("need 0 < min_dt <= dt");
  if (!(t_end > 0.0)) throw Error("t_end must be positive");
  if (!(consensus_tol > 0.0)) throw Error("consensus_tol must be positive");
  if (record_stride < 1) throw Error("record_stride must be >= 1");
}

double spread(std::span<const double> x) {
  if (x.empty()) throw EmptyInput();
  auto [lo, hi] = kernels::minmax(x);
  return hi - lo;
}

namespace {

bool all_positive(std::span<const double> x) {
  for (double v : x)
    if (!(v > 0.0)) return false;
  return true;
}

bool all_finite(std::span<const double> x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

Trajectory integrate(Protocol kind, const WeightedDigraph& g, std::span<const double> x0,
                     const IntegratorConfig& cfg) {
  cfg.validate();
  const int n = g.node_count();
  if (static_cast<int>(x0.size()) != n) throw LengthMismatch(x0.size(), n);
  if (!all_positive(x0)) throw NonPositiveState();

  Trajectory traj;
  traj.consensus_tol = cfg.consensus_tol;
  if (!is_strongly_connected(g)) {
    traj.warnings.push_back("graph is not strongly connected; consensus may not be reached");
    std::cerr << "gmcons: warning: " << traj.warnings.back() << "\n";
  }

  FieldEvaluator field(kind, g);

  std::vector<double> x(x0.begin(), x0.end());
  std::vector<double> k1(n), k2(n), k3(n), k4(n), xs(n), xn(n);

  double t = 0.0;
  traj.times.push_back(t);
  traj.states.push_back(x);

  if (spread(x) <= cfg.consensus_tol) {
    traj.terminated_by = Termination::Consensus;
    traj.consensus_value = am(x);
    return traj;
  }

  double dt = cfg.dt;
  long accepted = 0;
  int streak = 0;

  auto record = [&](bool force) {
    const bool due = force || (accepted % cfg.record_stride == 0);
    if (due && traj.times.back() < t) {
      traj.times.push_back(t);
      traj.states.push_back(x);
    }
  };

  while (t < cfg.t_end) {
    const double h = std::min(dt, cfg.t_end - t);

    bool ok = true;
    field(x, k1);
    kernels::vmadd(x, h / 2.0, k1, xs);
    ok = all_positive(xs);
    if (ok) {
      field(xs, k2);
      kernels::vmadd(x, h / 2.0, k2, xs);
      ok = all_positive(xs);
    }
    if (ok) {
      field(xs, k3);
      kernels::vmadd(x, h, k3, xs);
      ok = all_positive(xs);
    }
    if (ok) {
      field(xs, k4);
      xn = x;
      kernels::vaxpy(h / 6.0, k1, xn);
      kernels::vaxpy(h / 3.0, k2, xn);
      kernels::vaxpy(h / 3.0, k3, xn);
      kernels::vaxpy(h / 6.0, k4, xn);
      ok = all_positive(xn);
    }

    if (!ok) {
      if (cfg.method == Method::Rk4Fixed) {
        traj.terminated_by = Termination::Failure;
        return traj;
      }
      dt /= 2.0;
      streak = 0;
      if (dt < cfg.min_dt) throw StepUnderflow(dt);
      continue;
    }

    if (!all_finite(xn)) {
      traj.terminated_by = Termination::Failure;
      return traj;
    }

    t += h;
    x = xn;
    ++accepted;
    if (++streak >= 10 && dt < cfg.dt) {
      dt = std::min(2.0 * dt, cfg.dt);
      streak = 0;
    }
    record(false);

    if (spread(x) <= cfg.consensus_tol) {
      record(true);
      traj.terminated_by = Termination::Consensus;
      traj.consensus_value = am(x);
      return traj;
    }
  }

  record(true);
  traj.terminated_by = Termination::Horizon;
  return traj;
}

std::optional<double> conserved_quantity(Protocol kind, const PerronVector& q,
                                         std::span<const double> x) {
  switch (kind.tag()) {
    case ProtocolTag::Polynomial:
      return std::nullopt;
    case ProtocolTag::MetricDriven:
      if (kind.metric() == Metric::Sine) return std::nullopt;
      break;
    default:
      break;
  }
  if (x.size() != q.weights.size()) throw LengthMismatch(x.size(), q.weights.size());
  if (kind.tag() == ProtocolTag::Entropic) {
    if (!all_positive(x)) throw NonPositiveState();
    std::vector<double> logs(x.size());
    kernels::vlog(x, logs);
    return kernels::dot(q.weights, logs);
  }
  return kernels::dot(q.weights, x);
}

std::optional<double> conserved_quantity(Protocol kind, const WeightedDigraph& g,
                                         std::span<const double> x) {
  switch (kind.tag()) {
    case ProtocolTag::Polynomial:
      return std::nullopt;
    case ProtocolTag::MetricDriven:
      if (kind.metric() == Metric::Sine) return std::nullopt;
      break;
    default:
      break;
  }
  return conserved_quantity(kind, perron_left_vector(g), x);
}

double convergence_rate(const Trajectory& traj) {
  std::vector<double> ts, ls;
  for (std::size_t k = 0; k < traj.samples(); ++k) {
    const double s = spread(traj.states[k]);
    if (s > traj.consensus_tol) {
      ts.push_back(traj.times[k]);
      ls.push_back(std::log(s));
    }
  }
  if (ts.size() < 10) throw InsufficientSamples(ts.size());
  const double tm = kernels::sum(ts) / ts.size();
  const double lm = kernels::sum(ls) / ls.size();
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    num += (ts[k] - tm) * (ls[k] - lm);
    den += (ts[k] - tm) * (ts[k] - tm);
  }
  if (den == 0.0) throw InsufficientSamples(ts.size());
  return num / den;
}

HullAudit audit_hull(const Trajectory& traj, double slack) {
  HullAudit a;
  double prev_max = 0.0, prev_min = 0.0;
  for (std::size_t k = 0; k < traj.samples(); ++k) {
    auto [lo, hi] = kernels::minmax(traj.states[k]);
    if (k > 0) {
      if (hi > prev_max + slack) {
        a.max_nonincreasing = false;
        a.worst_violation = std::max(a.worst_violation, hi - prev_max);
      }
      if (lo < prev_min - slack) {
        a.min_nondecreasing = false;
        a.worst_violation = std::max(a.worst_violation, prev_min - lo);
      }
    }
    prev_max = hi;
    prev_min = lo;
  }
  return a;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, Protocol kind,
                          const WeightedDigraph& g) {
  const int n = traj.n();
  os << "t";
  for (int i = 0; i < n; ++i) os << ",x" << i;
  os << ",spread,conserved\n";

  bool have_q = false;
  PerronVector q;
  try {
    q = perron_left_vector(g);
    have_q = true;
  } catch (const NotStronglyConnected&) {
  }

  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
  };
  for (std::size_t k = 0; k < traj.samples(); ++k) {
    put(traj.times[k]);
    for (double v : traj.states[k]) {
      os << ",";
      put(v);
    }
    os << ",";
    put(spread(traj.states[k]));
    os << ",";
    if (have_q) {
      if (auto c = conserved_quantity(kind, q, traj.states[k])) put(*c);
    }
    os << "\n";
  }
}

}  // namespace gmcons
