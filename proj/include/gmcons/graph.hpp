#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmcons/errors.hpp"

namespace gmcons {

/// Dense row-major matrix. Small and value-semantic; all graphs in this
/// library are desk scale, so no sparsity machinery.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const double* data() const noexcept { return data_.data(); }
  double* data() noexcept { return data_.data(); }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  /// y = A x (through the active kernel backend).
  void apply(std::span<const double> x, std::span<double> y) const;

  Matrix transposed() const;

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

/// Directed edge: tail influences head with the given positive weight.
struct Edge {
  int tail;
  int head;
  double weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted digraph on nodes 0..n-1. Immutable after construction; all
/// operations on it are pure functions, safe to share across threads.
class WeightedDigraph {
 public:
  /// Validates: ids in range, no self-loops, positive weights, no duplicate
  /// (tail, head) pairs.
  WeightedDigraph(int n, std::vector<Edge> edges);

  int node_count() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Weighted adjacency: W(i, j) = weight of edge j -> i.
  Matrix adjacency() const;

  /// In-degrees d_i = sum_j W(i, j), accumulated in increasing j.
  std::vector<double> in_degrees() const;

  /// Total outgoing weight per node, accumulated in increasing head id.
  std::vector<double> out_weights() const;

  friend bool operator==(const WeightedDigraph& a, const WeightedDigraph& b);

 private:
  int n_;
  std::vector<Edge> edges_;
};

/// Left Perron vector q̂ of the Laplacian: q̂ > 0, |q̂|₁ = 1, q̂ᵀL = 0.
struct PerronVector {
  std::vector<double> weights;
  double residual = 0.0;
  long iterations = 0;
};

/// L = D - W. The diagonal is assembled as the negated off-diagonal row sum,
/// so every row sums to zero exactly (bitwise) when the off-diagonal entries
/// are added first and the diagonal last.
Matrix laplacian(const WeightedDigraph& g);

/// L̂ = I - D⁻¹W. Throws ZeroInDegree if some node has no in-edges.
Matrix normalized_laplacian(const WeightedDigraph& g);

/// True iff every node's in-weight equals its out-weight within tol.
bool is_balanced(const WeightedDigraph& g, double tol = 1e-12);

bool is_strongly_connected(const WeightedDigraph& g);

/// Power iteration on the row-stochastic P = I - L/(2 max d). Stops once
/// successive iterates differ by < tol/10 in the max norm and the residual
/// ‖q̂ᵀL‖∞ is at most tol; throws NoConvergence after 10^6 iterations.
PerronVector perron_left_vector(const WeightedDigraph& g, double tol = 1e-12);

/// All-to-all digraph; weight 1/(n-1) if normalized, else 1.
WeightedDigraph generate_complete(int n, bool normalized);

/// d-regular balanced circulant (i -> i+1..i+d mod n) with node labels
/// permuted by the seed; weight 1/d if normalized, else 1.
WeightedDigraph generate_regular(int n, int d, bool normalized, std::uint64_t seed);

/// Text format: first significant line is the node count, then one
/// "tail head weight" triple per line; '#' starts a comment.
WeightedDigraph parse_edge_list(std::string_view text);
std::string serialize_edge_list(const WeightedDigraph& g);

WeightedDigraph load_edge_list_file(const std::string& path);

}  // namespace gmcons
