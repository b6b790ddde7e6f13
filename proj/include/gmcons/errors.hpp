#pragma once

#include <stdexcept>
#include <string>

namespace gmcons {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class EmptyInput : public Error {
 public:
  EmptyInput() : Error("empty input vector") {}
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t a, std::size_t b)
      : Error("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class NonPositiveInput : public Error {
 public:
  explicit NonPositiveInput(const std::string& what = "input must be strictly positive")
      : Error(what) {}
};

class NonPositiveState : public Error {
 public:
  NonPositiveState() : Error("state vector must be strictly positive") {}
};

class NonPositiveWeight : public Error {
 public:
  explicit NonPositiveWeight(const std::string& where)
      : Error("edge weight must be strictly positive (" + where + ")") {}
};

class DuplicateEdge : public Error {
 public:
  DuplicateEdge(int tail, int head)
      : Error("duplicate edge " + std::to_string(tail) + " -> " + std::to_string(head)) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("parse error at line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ZeroInDegree : public Error {
 public:
  explicit ZeroInDegree(int node)
      : Error("node " + std::to_string(node) + " has zero in-degree"), node_(node) {}
  int node() const noexcept { return node_; }

 private:
  int node_;
};

class NotStronglyConnected : public Error {
 public:
  NotStronglyConnected() : Error("graph is not strongly connected") {}
};

class NoConvergence : public Error {
 public:
  explicit NoConvergence(long iterations)
      : Error("iteration failed to converge after " + std::to_string(iterations) + " steps"),
        iterations_(iterations) {}
  long iterations() const noexcept { return iterations_; }

 private:
  long iterations_;
};

class InvalidDegree : public Error {
 public:
  InvalidDegree(int n, int d)
      : Error("invalid regular degree d=" + std::to_string(d) + " for n=" + std::to_string(n)) {}
};

class NotBalanced : public Error {
 public:
  NotBalanced() : Error("graph weighting is not balanced") {}
};

class SineDomainViolation : public Error {
 public:
  SineDomainViolation() : Error("state differences outside (-pi/2, pi/2)") {}
};

class UnsupportedMetric : public Error {
 public:
  UnsupportedMetric() : Error("metric not supported by this operation") {}
};

class StepUnderflow : public Error {
 public:
  explicit StepUnderflow(double dt)
      : Error("integration step underflow: dt=" + std::to_string(dt)) {}
};

class InsufficientSamples : public Error {
 public:
  explicit InsufficientSamples(std::size_t have)
      : Error("not enough samples above tolerance: " + std::to_string(have)) {}
};

class NotProbabilityVector : public Error {
 public:
  NotProbabilityVector() : Error("vector does not sum to one") {}
};

class NotSymmetric : public Error {
 public:
  NotSymmetric() : Error("matrix is not symmetric") {}
};

class NotConnected : public Error {
 public:
  NotConnected() : Error("graph is not connected") {}
};

class InfeasibleTarget : public Error {
 public:
  explicit InfeasibleTarget(const std::string& what) : Error(what) {}
};

class BadBracket : public Error {
 public:
  explicit BadBracket(const std::string& what) : Error(what) {}
};

}  // namespace gmcons
