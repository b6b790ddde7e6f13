#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmcons/graph.hpp"
#include "gmcons/means.hpp"

namespace gmcons {

enum class ProtocolTag { Linear, Polynomial, Entropic, ScalingInvariant, MetricDriven };

/// Tagged choice of consensus vector field.
///
///   linear             ẋ = -L x
///   polynomial         ẋ_i = -Π_{j∈N_i⁻} x_i^{w_ji} + Π_{j∈N_i⁺} x_j^{w_ij}
///   entropic           ẋ_i = -Σ_j w_ij x_i ln(x_i / x_j)
///   scaling-invariant  ẋ = -L ln x
///   metric-driven      ẋ_i = Σ_j w_ij sgn(x_j - x_i) d(x_j, x_i)
///
/// The euclidean and hyperbolic metric-driven fields reduce term-by-term to
/// the linear and scaling-invariant fields and are evaluated through those
/// code paths, so the coincidence is bitwise.
class Protocol {
 public:
  static Protocol linear() { return {ProtocolTag::Linear, Metric::Euclidean}; }
  static Protocol polynomial() { return {ProtocolTag::Polynomial, Metric::Euclidean}; }
  static Protocol entropic() { return {ProtocolTag::Entropic, Metric::Euclidean}; }
  static Protocol scaling_invariant() {
    return {ProtocolTag::ScalingInvariant, Metric::Euclidean};
  }
  static Protocol metric_driven(Metric m) { return {ProtocolTag::MetricDriven, m}; }

  /// Names: linear, polynomial, entropic, scaling, metric:euclidean,
  /// metric:hyperbolic, metric:sine.
  static Protocol parse(std::string_view name);
  std::string name() const;

  ProtocolTag tag() const noexcept { return tag_; }
  Metric metric() const noexcept { return metric_; }

  bool requires_positive_state() const noexcept;
  bool requires_balanced() const noexcept { return tag_ == ProtocolTag::Polynomial; }

  friend bool operator==(const Protocol&, const Protocol&) = default;

 private:
  Protocol(ProtocolTag t, Metric m) : tag_(t), metric_(m) {}
  ProtocolTag tag_;
  Metric metric_;
};

/// State-dependent factorization of the nonlinear fields:
///   polynomial          ẋ = -R L_X x
///   entropic            ẋ = -X L_X x
///   scaling-invariant   ẋ = -L_X x
/// with [L_X]_ij = -w_ij / lgm(x_j, x_i) off the diagonal, R the diagonal of
/// logarithmic means of the per-node flow rates, X = diag(x).
struct VirtualFactors {
  Matrix l_x;
  Matrix r;
  Matrix x;
};

/// Precompiled evaluator for one (protocol, graph) pair. Holds the dense
/// operators and scratch buffers, so construct one per thread; evaluation
/// itself has no hidden shared state.
class FieldEvaluator {
 public:
  FieldEvaluator(Protocol kind, const WeightedDigraph& g);

  /// dxdt = f(x). Throws NonPositiveState / SineDomainViolation when the
  /// state leaves the protocol's domain.
  void operator()(std::span<const double> x, std::span<double> dxdt);

  const Protocol& kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }

 private:
  Protocol kind_;
  int n_;
  Matrix lap_;
  Matrix adj_;
  std::vector<double> out_weights_;
  std::vector<Edge> edges_;
  std::vector<double> u_, v_, s_;
};

/// One-shot evaluation (builds an evaluator internally).
std::vector<double> vector_field(Protocol kind, const WeightedDigraph& g,
                                 std::span<const double> x);

/// In/out flow rates at node i: r⁺ = Π_{j∈N_i⁺} x_j^{w_ij},
/// r⁻ = Π_{j∈N_i⁻} x_i^{w_ji}. Empty neighborhoods give rate 1.
std::pair<double, double> rates(const WeightedDigraph& g, std::span<const double> x, int i);

VirtualFactors virtual_factors(const WeightedDigraph& g, std::span<const double> x);

/// sgn(x_j - x_i) · d(x_j, x_i); the edge interaction of the metric-driven
/// class. Zero at x_i = x_j, no smoothing.
double metric_edge_term(Metric m, double x_i, double x_j);

/// Max deviation across the factorized representations of the field:
/// ẋ = -M L_X x and ẋ = -M ln-coordinate form, M per protocol as above.
/// Defined for the three nonlinear protocols.
double field_equivalence_residual(Protocol kind, const WeightedDigraph& g,
                                  std::span<const double> x);

/// ‖L_X(x) x - L ln x‖∞ — the identity that moves the nonlinearity from the
/// branch weights to the node coordinates.
double lx_identity_residual(const WeightedDigraph& g, std::span<const double> x);

}  // namespace gmcons
