#pragma once

// Deterministic random-graph generators for tests. The balanced generator
// superimposes weighted cycles (each cycle adds equal in- and out-weight at
// every node it visits, so the sum is balanced by construction).

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "gmcons/graph.hpp"

namespace gmcons::testsupport {

inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline std::vector<double> random_state(std::mt19937_64& rng, int n, double lo, double hi) {
  std::vector<double> x(n);
  for (double& v : x) v = uniform_in(rng, lo, hi);
  return x;
}

/// Strongly connected: a random-weight ring plus extra random edges.
inline WeightedDigraph random_strongly_connected(std::mt19937_64& rng, int n,
                                                 double extra_edge_prob = 0.3) {
  std::map<std::pair<int, int>, double> w;
  for (int i = 0; i < n; ++i) w[{i, (i + 1) % n}] = uniform_in(rng, 0.5, 2.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (uniform_unit(rng) < extra_edge_prob) {
        auto key = std::make_pair(i, j);
        if (!w.count(key)) w[key] = uniform_in(rng, 0.5, 2.0);
      }
    }
  std::vector<Edge> edges;
  for (const auto& [key, weight] : w) edges.push_back({key.first, key.second, weight});
  return {n, std::move(edges)};
}

/// Balanced and strongly connected: the full ring plus random permutation
/// cycles, each with one weight; parallel contributions accumulate. With
/// dyadic = true, weights are multiples of 1/8 so all degree sums are exact.
inline WeightedDigraph random_balanced(std::mt19937_64& rng, int n, int extra_cycles = 3,
                                       bool dyadic = false) {
  std::map<std::pair<int, int>, double> w;
  auto draw_weight = [&] {
    const double v = uniform_in(rng, 0.5, 2.0);
    return dyadic ? std::round(v * 8.0) / 8.0 : v;
  };
  auto add_cycle = [&](const std::vector<int>& nodes, double weight) {
    for (std::size_t k = 0; k < nodes.size(); ++k)
      w[{nodes[k], nodes[(k + 1) % nodes.size()]}] += weight;
  };

  std::vector<int> ring(n);
  std::iota(ring.begin(), ring.end(), 0);
  add_cycle(ring, draw_weight());

  for (int c = 0; c < extra_cycles; ++c) {
    const int len = uniform_int(rng, 2, n);
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(pool[i], pool[uniform_int(rng, 0, i)]);
    pool.resize(len);
    add_cycle(pool, draw_weight());
  }

  std::vector<Edge> edges;
  for (const auto& [key, weight] : w) edges.push_back({key.first, key.second, weight});
  return {n, std::move(edges)};
}

/// Symmetric connected: random spanning tree plus extra symmetric pairs.
inline WeightedDigraph random_symmetric_connected(std::mt19937_64& rng, int n,
                                                  double extra_edge_prob = 0.25) {
  std::map<std::pair<int, int>, double> w;
  auto add_pair = [&](int i, int j, double weight) {
    w[{i, j}] = weight;
    w[{j, i}] = weight;
  };
  for (int i = 1; i < n; ++i) add_pair(i, uniform_int(rng, 0, i - 1), uniform_in(rng, 0.5, 2.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!w.count({i, j}) && uniform_unit(rng) < extra_edge_prob)
        add_pair(i, j, uniform_in(rng, 0.5, 2.0));
  std::vector<Edge> edges;
  for (const auto& [key, weight] : w) edges.push_back({key.first, key.second, weight});
  return {n, std::move(edges)};
}

}  // namespace gmcons::testsupport
