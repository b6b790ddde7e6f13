#include "gmcons/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gmcons/kernels.hpp"

namespace gmcons {

Protocol Protocol::parse(std::string_view name) {
  if (name == "linear") return linear();
  if (name == "polynomial") return polynomial();
  if (name == "entropic") return entropic();
  if (name == "scaling") return scaling_invariant();
  if (name == "metric:euclidean") return metric_driven(Metric::Euclidean);
  if (name == "metric:hyperbolic") return metric_driven(Metric::Hyperbolic);
  if (name == "metric:sine") return metric_driven(Metric::Sine);
  throw Error("unknown protocol: " + std::string(name));
}

std::string Protocol::name() const {
  switch (tag_) {
    case ProtocolTag::Linear:
      return "linear";
    case ProtocolTag::Polynomial:
      return "polynomial";
    case ProtocolTag::Entropic:
      return "entropic";
    case ProtocolTag::ScalingInvariant:
      return "scaling";
    case ProtocolTag::MetricDriven:
      switch (metric_) {
        case Metric::Euclidean:
          return "metric:euclidean";
        case Metric::Hyperbolic:
          return "metric:hyperbolic";
        case Metric::Sine:
          return "metric:sine";
      }
  }
  return "?";
}

bool Protocol::requires_positive_state() const noexcept {
  switch (tag_) {
    case ProtocolTag::Polynomial:
    case ProtocolTag::Entropic:
    case ProtocolTag::ScalingInvariant:
      return true;
    case ProtocolTag::MetricDriven:
      return metric_ == Metric::Hyperbolic;
    case ProtocolTag::Linear:
      return false;
  }
  return false;
}

namespace {

void check_positive_state(std::span<const double> x) {
  for (double v : x)
    if (!(v > 0.0)) throw NonPositiveState();
}

}  // namespace

FieldEvaluator::FieldEvaluator(Protocol kind, const WeightedDigraph& g)
    : kind_(kind), n_(g.node_count()), u_(n_), v_(n_), s_(n_) {
  if (kind.requires_balanced() && !is_balanced(g)) throw NotBalanced();
  switch (kind.tag()) {
    case ProtocolTag::Polynomial:
      adj_ = g.adjacency();
      out_weights_ = g.out_weights();
      break;
    case ProtocolTag::MetricDriven:
      if (kind.metric() == Metric::Sine) {
        edges_ = g.edges();
        break;
      }
      [[fallthrough]];
    default:
      lap_ = laplacian(g);
      break;
  }
}

void FieldEvaluator::operator()(std::span<const double> x, std::span<double> dxdt) {
  if (static_cast<int>(x.size()) != n_) throw LengthMismatch(x.size(), n_);
  if (kind_.requires_positive_state()) check_positive_state(x);

  ProtocolTag tag = kind_.tag();
  if (tag == ProtocolTag::MetricDriven) {
    switch (kind_.metric()) {
      case Metric::Euclidean:
        tag = ProtocolTag::Linear;
        break;
      case Metric::Hyperbolic:
        tag = ProtocolTag::ScalingInvariant;
        break;
      case Metric::Sine: {
        auto [lo, hi] = kernels::minmax(x);
        if (!(hi - lo < std::numbers::pi / 2.0)) throw SineDomainViolation();
        std::fill(dxdt.begin(), dxdt.end(), 0.0);
        for (const Edge& e : edges_)
          dxdt[e.head] += e.weight * metric_edge_term(Metric::Sine, x[e.head], x[e.tail]);
        return;
      }
    }
  }

  switch (tag) {
    case ProtocolTag::Linear:
      lap_.apply(x, dxdt);
      kernels::vscale(-1.0, dxdt, dxdt);
      return;
    case ProtocolTag::ScalingInvariant:
      kernels::vlog(x, u_);
      lap_.apply(u_, dxdt);
      kernels::vscale(-1.0, dxdt, dxdt);
      return;
    case ProtocolTag::Entropic:
      kernels::vlog(x, u_);
      lap_.apply(u_, v_);
      kernels::vmul(x, v_, dxdt);
      kernels::vscale(-1.0, dxdt, dxdt);
      return;
    case ProtocolTag::Polynomial:
      // r⁺ = exp(W ln x), r⁻_i = exp(outweight_i · ln x_i)
      kernels::vlog(x, u_);
      adj_.apply(u_, v_);
      kernels::vexp(v_, v_);
      kernels::vmul(out_weights_, u_, s_);
      kernels::vexp(s_, s_);
      kernels::vsub(v_, s_, dxdt);
      return;
    default:
      throw Error("unhandled protocol");
  }
}

std::vector<double> vector_field(Protocol kind, const WeightedDigraph& g,
                                 std::span<const double> x) {
  FieldEvaluator ev(kind, g);
  std::vector<double> out(g.node_count());
  ev(x, out);
  return out;
}

std::pair<double, double> rates(const WeightedDigraph& g, std::span<const double> x, int i) {
  if (static_cast<int>(x.size()) != g.node_count())
    throw LengthMismatch(x.size(), g.node_count());
  check_positive_state(x);
  double rp = 1.0, rm = 1.0;
  for (const Edge& e : g.edges()) {
    if (e.head == i) rp *= std::pow(x[e.tail], e.weight);
    if (e.tail == i) rm *= std::pow(x[i], e.weight);
  }
  return {rp, rm};
}

double metric_edge_term(Metric m, double x_i, double x_j) {
  const double sign = x_j > x_i ? 1.0 : (x_j < x_i ? -1.0 : 0.0);
  double dist = 0.0;
  switch (m) {
    case Metric::Euclidean:
      dist = std::abs(x_j - x_i);
      break;
    case Metric::Hyperbolic:
      dist = hyperbolic_distance(x_j, x_i);
      break;
    case Metric::Sine:
      dist = std::abs(std::sin(x_j - x_i));
      break;
  }
  return sign * dist;
}

VirtualFactors virtual_factors(const WeightedDigraph& g, std::span<const double> x) {
  const int n = g.node_count();
  if (static_cast<int>(x.size()) != n) throw LengthMismatch(x.size(), n);
  check_positive_state(x);

  Matrix w = g.adjacency();
  VirtualFactors f{Matrix(n, n), Matrix(n, n), Matrix(n, n)};
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i || w(i, j) == 0.0) continue;
      const double c = w(i, j) / lgm(x[j], x[i]);
      f.l_x(i, j) = -c;
      diag += c;
    }
    f.l_x(i, i) = diag;
    auto [rp, rm] = rates(g, x, i);
    f.r(i, i) = lgm(rp, rm);
    f.x(i, i) = x[i];
  }
  return f;
}

namespace {

double inf_norm_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

double field_equivalence_residual(Protocol kind, const WeightedDigraph& g,
                                  std::span<const double> x) {
  const int n = g.node_count();
  if (kind.tag() != ProtocolTag::Polynomial && kind.tag() != ProtocolTag::Entropic &&
      kind.tag() != ProtocolTag::ScalingInvariant)
    throw Error("equivalence residual is defined for the nonlinear protocols");

  std::vector<double> f = vector_field(kind, g, x);
  VirtualFactors vf = virtual_factors(g, x);
  Matrix l = laplacian(g);
  std::vector<double> u(n), a(n), b(n), tmp(n);
  kernels::vlog(x, u);

  vf.l_x.apply(x, tmp);   // L_X x
  l.apply(u, b);          // L ln x

  auto scale_rows = [&](const Matrix& diag, std::span<const double> in, std::span<double> out) {
    for (int i = 0; i < n; ++i) out[i] = diag(i, i) * in[i];
  };

  switch (kind.tag()) {
    case ProtocolTag::Polynomial:
      scale_rows(vf.r, tmp, a);
      scale_rows(vf.r, b, b);
      break;
    case ProtocolTag::Entropic:
      scale_rows(vf.x, tmp, a);
      scale_rows(vf.x, b, b);
      break;
    default:
      a.assign(tmp.begin(), tmp.end());
      break;
  }
  kernels::vscale(-1.0, a, a);
  kernels::vscale(-1.0, b, b);
  return std::max(inf_norm_diff(f, a), inf_norm_diff(f, b));
}

double lx_identity_residual(const WeightedDigraph& g, std::span<const double> x) {
  const int n = g.node_count();
  VirtualFactors vf = virtual_factors(g, x);
  Matrix l = laplacian(g);
  std::vector<double> u(n), a(n), b(n);
  kernels::vlog(x, u);
  vf.l_x.apply(x, a);
  l.apply(u, b);
  return inf_norm_diff(a, b);
}

}  // namespace gmcons
