#include "gmcons/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "gmcons/kernels.hpp"

namespace gmcons {

void Matrix::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols_ || y.size() != rows_) throw LengthMismatch(x.size(), cols_);
  kernels::matvec(data_.data(), rows_, cols_, x.data(), y.data());
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

WeightedDigraph::WeightedDigraph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw Error("node count must be positive");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges_) {
    if (e.tail < 0 || e.tail >= n_ || e.head < 0 || e.head >= n_)
      throw Error("edge endpoint out of range: " + std::to_string(e.tail) + " -> " +
                  std::to_string(e.head));
    if (e.tail == e.head) throw Error("self-loop at node " + std::to_string(e.tail));
    if (!(e.weight > 0.0))
      throw NonPositiveWeight(std::to_string(e.tail) + " -> " + std::to_string(e.head));
    if (!seen.insert({e.tail, e.head}).second) throw DuplicateEdge(e.tail, e.head);
  }
}

Matrix WeightedDigraph::adjacency() const {
  Matrix w(n_, n_);
  for (const Edge& e : edges_) w(e.head, e.tail) = e.weight;
  return w;
}

std::vector<double> WeightedDigraph::in_degrees() const {
  Matrix w = adjacency();
  std::vector<double> d(n_, 0.0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) d[i] += w(i, j);
  return d;
}

std::vector<double> WeightedDigraph::out_weights() const {
  Matrix w = adjacency();
  std::vector<double> o(n_, 0.0);
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i) o[j] += w(i, j);
  return o;
}

bool operator==(const WeightedDigraph& a, const WeightedDigraph& b) {
  if (a.n_ != b.n_) return false;
  auto key = [](const Edge& e) { return std::make_tuple(e.tail, e.head, e.weight); };
  std::vector<Edge> ea = a.edges_, eb = b.edges_;
  auto lt = [&](const Edge& x, const Edge& y) { return key(x) < key(y); };
  std::sort(ea.begin(), ea.end(), lt);
  std::sort(eb.begin(), eb.end(), lt);
  return ea == eb;
}

Matrix laplacian(const WeightedDigraph& g) {
  const int n = g.node_count();
  Matrix w = g.adjacency();
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      l(i, j) = -w(i, j);
      diag += w(i, j);
    }
    l(i, i) = diag;  // equals the in-degree; row sums to zero by assembly
  }
  return l;
}

Matrix normalized_laplacian(const WeightedDigraph& g) {
  const int n = g.node_count();
  Matrix w = g.adjacency();
  std::vector<double> d = g.in_degrees();
  for (int i = 0; i < n; ++i)
    if (d[i] == 0.0) throw ZeroInDegree(i);
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) l(i, j) = (i == j) ? 1.0 : -w(i, j) / d[i];
  }
  return l;
}

bool is_balanced(const WeightedDigraph& g, double tol) {
  if (tol < 0) throw Error("tolerance must be non-negative");
  std::vector<double> in = g.in_degrees();
  std::vector<double> out = g.out_weights();
  for (int i = 0; i < g.node_count(); ++i)
    if (std::abs(in[i] - out[i]) > tol) return false;
  return true;
}

namespace {

// reachability of every node from node 0 along the given adjacency lists
bool all_reachable(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

}  // namespace

bool is_strongly_connected(const WeightedDigraph& g) {
  const int n = g.node_count();
  if (n == 1) return true;
  std::vector<std::vector<int>> fwd(n), rev(n);
  for (const Edge& e : g.edges()) {
    fwd[e.tail].push_back(e.head);
    rev[e.head].push_back(e.tail);
  }
  return all_reachable(fwd) && all_reachable(rev);
}

PerronVector perron_left_vector(const WeightedDigraph& g, double tol) {
  if (!is_strongly_connected(g)) throw NotStronglyConnected();
  const int n = g.node_count();
  if (n == 1) return {{1.0}, 0.0, 0};

  Matrix l = laplacian(g);
  std::vector<double> d = g.in_degrees();
  const double dmax = *std::max_element(d.begin(), d.end());

  // transpose of P = I - L/(2 dmax); left iteration becomes a plain matvec
  Matrix pt(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pt(j, i) = (i == j ? 1.0 : 0.0) - l(i, j) / (2.0 * dmax);

  Matrix lt = l.transposed();
  std::vector<double> v(n, 1.0 / n), next(n), res(n);
  const long max_iter = 1000000;
  long it = 0;
  double residual = 0.0;
  for (; it < max_iter; ++it) {
    pt.apply(v, next);
    double norm1 = kernels::sum(next);
    kernels::vscale(1.0 / norm1, next, next);
    double diff = 0.0;
    for (int i = 0; i < n; ++i) diff = std::max(diff, std::abs(next[i] - v[i]));
    v = next;
    if (diff < tol / 10.0) {
      lt.apply(v, res);
      auto [lo, hi] = kernels::minmax(res);
      residual = std::max(std::abs(lo), std::abs(hi));
      if (residual <= tol) break;
    }
  }
  if (it == max_iter) throw NoConvergence(max_iter);
  return {std::move(v), residual, it + 1};
}

WeightedDigraph generate_complete(int n, bool normalized) {
  if (n < 2) throw Error("complete graph needs n >= 2");
  const double w = normalized ? 1.0 / (n - 1) : 1.0;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) edges.push_back({i, j, w});
  return {n, std::move(edges)};
}

WeightedDigraph generate_regular(int n, int d, bool normalized, std::uint64_t seed) {
  if (d < 2 || d >= n) throw InvalidDegree(n, d);
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    // unbiased bounded draw by rejection
    const std::uint64_t bound = static_cast<std::uint64_t>(i) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= limit);
    std::swap(label[i], label[static_cast<int>(r % bound)]);
  }
  const double w = normalized ? 1.0 / d : 1.0;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * d);
  for (int i = 0; i < n; ++i)
    for (int k = 1; k <= d; ++k) edges.push_back({label[i], label[(i + k) % n], w});
  return {n, std::move(edges)};
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

bool parse_int(const std::string& s, int& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

bool parse_double(const std::string& s, double& out) {
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && s.size() > 0;
}

}  // namespace

WeightedDigraph parse_edge_list(std::string_view text) {
  std::istringstream stream{std::string(text)};
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> seen;
  while (std::getline(stream, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto toks = split_tokens(line);
    if (toks.empty()) continue;
    if (n < 0) {
      if (toks.size() != 1 || !parse_int(toks[0], n) || n < 1)
        throw ParseError(lineno, "expected positive node count");
      continue;
    }
    if (toks.size() != 3) throw ParseError(lineno, "expected 'tail head weight'");
    int tail, head;
    double w;
    if (!parse_int(toks[0], tail) || !parse_int(toks[1], head))
      throw ParseError(lineno, "bad node id");
    if (!parse_double(toks[2], w) || !std::isfinite(w)) throw ParseError(lineno, "bad weight");
    if (tail < 0 || tail >= n || head < 0 || head >= n)
      throw ParseError(lineno, "node id out of range");
    if (tail == head) throw ParseError(lineno, "self-loop");
    if (!(w > 0.0)) throw NonPositiveWeight("line " + std::to_string(lineno));
    if (!seen.insert({tail, head}).second) throw DuplicateEdge(tail, head);
    edges.push_back({tail, head, w});
  }
  if (n < 0) throw ParseError(lineno, "missing node count");
  return {n, std::move(edges)};
}

std::string serialize_edge_list(const WeightedDigraph& g) {
  std::string out = std::to_string(g.node_count()) + "\n";
  char buf[64];
  for (const Edge& e : g.edges()) {
    std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", e.tail, e.head, e.weight);
    out += buf;
  }
  return out;
}

WeightedDigraph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_edge_list(ss.str());
}

}  // namespace gmcons
