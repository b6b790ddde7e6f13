#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "gmcons/graph.hpp"
#include "support/random_graphs.hpp"

using namespace gmcons;
namespace ts = gmcons::testsupport;

namespace {

WeightedDigraph symmetric_pair(double w = 1.0) {
  return {2, {{0, 1, w}, {1, 0, w}}};
}

WeightedDigraph unbalanced5() {
  return load_edge_list_file(std::string(GMCONS_DATA_DIR) + "/unbalanced5.edges");
}

WeightedDigraph balanced5() {
  return load_edge_list_file(std::string(GMCONS_DATA_DIR) + "/balanced5.edges");
}

// row sums with the diagonal added last; zero exactly by assembly
double exact_row_sum_residual(const Matrix& l) {
  double worst = 0.0;
  for (std::size_t i = 0; i < l.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < l.cols(); ++j)
      if (j != i) s += l(i, j);
    s += l(i, i);
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("laplacian of the symmetric pair") {
  Matrix l = laplacian(symmetric_pair());
  CHECK(l(0, 0) == 1.0);
  CHECK(l(0, 1) == -1.0);
  CHECK(l(1, 0) == -1.0);
  CHECK(l(1, 1) == 1.0);
}

TEST_CASE("laplacian diagonal of the unbalanced 5-node graph") {
  Matrix l = laplacian(unbalanced5());
  const double expect[5] = {2, 7, 2, 11, 2};
  for (int i = 0; i < 5; ++i) CHECK(l(i, i) == expect[i]);
}

TEST_CASE("laplacian of an edgeless graph is zero") {
  WeightedDigraph g(3, {});
  Matrix l = laplacian(g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(l(i, j) == 0.0);
}

TEST_CASE("laplacian row sums vanish exactly on random graphs") {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 50; ++rep) {
    auto g = ts::random_strongly_connected(rng, ts::uniform_int(rng, 2, 12));
    CHECK(exact_row_sum_residual(laplacian(g)) == 0.0);
  }
}

TEST_CASE("normalized laplacian removes the weight scale") {
  Matrix l = normalized_laplacian(symmetric_pair(5.0));
  CHECK(l(0, 0) == 1.0);
  CHECK(l(0, 1) == -1.0);
  CHECK(l(1, 0) == -1.0);
  CHECK(l(1, 1) == 1.0);
}

TEST_CASE("normalized laplacian row of the heaviest node") {
  Matrix l = normalized_laplacian(unbalanced5());
  CHECK(l(3, 0) == doctest::Approx(-1.0 / 11).epsilon(1e-15));
  CHECK(l(3, 1) == doctest::Approx(-5.0 / 11).epsilon(1e-15));
  CHECK(l(3, 2) == doctest::Approx(-2.0 / 11).epsilon(1e-15));
  CHECK(l(3, 3) == 1.0);
  CHECK(l(3, 4) == doctest::Approx(-3.0 / 11).epsilon(1e-15));
  for (int i = 0; i < 5; ++i) {
    double rs = 0.0;
    for (int j = 0; j < 5; ++j) rs += l(i, j);
    CHECK(std::abs(rs) <= 1e-15);
  }
}

TEST_CASE("normalized laplacian rejects sink-free nodes") {
  WeightedDigraph g(2, {{0, 1, 1.0}});  // node 0 has no in-edges
  CHECK_THROWS_AS(normalized_laplacian(g), ZeroInDegree);
}

TEST_CASE("balancedness") {
  CHECK(is_balanced(symmetric_pair()));
  CHECK(is_balanced(balanced5(), 0.0));
  CHECK_FALSE(is_balanced(unbalanced5()));
  CHECK(is_balanced(generate_complete(6, true), 0.0));
}

TEST_CASE("balanced with zero tolerance implies exactly zero column sums") {
  std::mt19937_64 rng(102);
  for (int rep = 0; rep < 30; ++rep) {
    auto g = ts::random_balanced(rng, ts::uniform_int(rng, 3, 10));
    if (!is_balanced(g, 0.0)) continue;  // cycle sums usually collide bitwise, but not always
    Matrix l = laplacian(g);
    const int n = g.node_count();
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        if (i != j) s += l(i, j);
      s += l(j, j);
      CHECK(s == 0.0);
    }
  }
}

TEST_CASE("strong connectivity predicate") {
  WeightedDigraph cycle(3, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  CHECK(is_strongly_connected(cycle));
  WeightedDigraph path(3, {{0, 1, 1}, {1, 2, 1}});
  CHECK_FALSE(is_strongly_connected(path));
  CHECK(is_strongly_connected(unbalanced5()));
  CHECK(is_strongly_connected(WeightedDigraph(1, {})));
}

TEST_CASE("perron vector of balanced graphs is uniform") {
  PerronVector q = perron_left_vector(balanced5(), 1e-13);
  for (double v : q.weights) CHECK(v == doctest::Approx(0.2).epsilon(1e-10));
}

TEST_CASE("perron vector of the unbalanced 5-node graph") {
  PerronVector q = perron_left_vector(unbalanced5(), 1e-13);
  // printed to two decimals: [0.26, 0.14, 0.37, 0.09, 0.14]
  const double two_dec[5] = {0.26, 0.14, 0.37, 0.09, 0.14};
  // exact rationals [2.75, 1.5, 4, 1, 1.5] / 10.75
  const double exact[5] = {2.75 / 10.75, 1.5 / 10.75, 4.0 / 10.75, 1.0 / 10.75, 1.5 / 10.75};
  for (int i = 0; i < 5; ++i) {
    CHECK(std::abs(q.weights[i] - two_dec[i]) < 0.005);
    CHECK(q.weights[i] == doctest::Approx(exact[i]).epsilon(1e-11));
  }
  CHECK(q.residual <= 1e-13);
}

TEST_CASE("perron requires strong connectivity") {
  WeightedDigraph path(3, {{0, 1, 1}, {1, 2, 1}});
  CHECK_THROWS_AS(perron_left_vector(path), NotStronglyConnected);
}

TEST_CASE("perron residual on random strongly connected graphs") {
  std::mt19937_64 rng(103);
  for (int rep = 0; rep < 100; ++rep) {
    auto g = ts::random_strongly_connected(rng, ts::uniform_int(rng, 2, 12));
    PerronVector q = perron_left_vector(g, 1e-12);
    CHECK(q.residual <= 1e-12);
    double sum = 0.0;
    for (double v : q.weights) {
      CHECK(v > 0.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("complete graph generator") {
  auto g2 = generate_complete(2, true);
  CHECK(g2.edges().size() == 2);
  for (const Edge& e : g2.edges()) CHECK(e.weight == 1.0);

  auto g5 = generate_complete(5, true);
  CHECK(g5.edges().size() == 20);
  for (const Edge& e : g5.edges()) CHECK(e.weight == 0.25);

  auto g3 = generate_complete(3, false);
  CHECK(g3.edges().size() == 6);
  for (const Edge& e : g3.edges()) CHECK(e.weight == 1.0);
}

TEST_CASE("regular generator: complete when d = n-1, circulant otherwise") {
  auto g = generate_regular(5, 4, false, 7);
  CHECK(g == generate_complete(5, false));

  auto c = generate_regular(4, 2, false, 0);
  CHECK(c.edges().size() == 8);
  CHECK(is_balanced(c, 0.0));
  CHECK(is_strongly_connected(c));

  CHECK_THROWS_AS(generate_regular(4, 1, false, 0), InvalidDegree);
  CHECK_THROWS_AS(generate_regular(4, 4, false, 0), InvalidDegree);
}

TEST_CASE("regular generator: balanced with unit in-degree counts") {
  auto g = generate_regular(30, 2, true, 42);
  CHECK(g.edges().size() == 60);
  CHECK(is_balanced(g, 0.0));
  CHECK(is_strongly_connected(g));
  std::vector<int> indeg(30, 0);
  for (const Edge& e : g.edges()) {
    ++indeg[e.head];
    CHECK(e.weight == 0.5);
  }
  for (int c : indeg) CHECK(c == 2);
  // seed changes labels only
  CHECK(generate_regular(30, 2, true, 42) == generate_regular(30, 2, true, 42));
  CHECK_FALSE(generate_regular(30, 2, true, 1) == generate_regular(30, 2, true, 2));
}

TEST_CASE("edge list parsing") {
  auto g = parse_edge_list("3\n0 1 2.0\n1 2 1.0\n2 0 1.0");
  CHECK(g.node_count() == 3);
  CHECK(g.edges().size() == 3);
  CHECK(is_strongly_connected(g));

  CHECK_THROWS_AS(parse_edge_list("2\n0 0 1.0"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("2\n0 1 1.0\n0 1 2.0"), DuplicateEdge);
  CHECK_THROWS_AS(parse_edge_list("2\n0 1 -1.0"), NonPositiveWeight);
  CHECK_THROWS_AS(parse_edge_list("2\n0 5 1.0"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("2\n0 1"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("  "), ParseError);
  CHECK_THROWS_AS(parse_edge_list("2\n0 1 nope"), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  auto g = parse_edge_list("# header\n\n3\n# a cycle\n0 1 2.0\n1 2 1.0 # tail\n2 0 1.0\n");
  CHECK(g.edges().size() == 3);
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(104);
  for (int rep = 0; rep < 40; ++rep) {
    auto g = ts::random_strongly_connected(rng, ts::uniform_int(rng, 2, 9));
    CHECK(parse_edge_list(serialize_edge_list(g)) == g);
  }
}

TEST_CASE("parse then serialize is the identity on canonical text") {
  const std::string text = "3\n0 1 2\n1 2 1\n2 0 0.75\n";
  const std::string canon = serialize_edge_list(parse_edge_list(text));
  CHECK(parse_edge_list(canon) == parse_edge_list(text));
  CHECK(serialize_edge_list(parse_edge_list(canon)) == canon);
}

TEST_CASE("matrix apply multiplies") {
  Matrix a(2, 3);
  a(0, 0) = 1;
  a(0, 1) = 2;
  a(0, 2) = 3;
  a(1, 0) = -1;
  a(1, 1) = 0;
  a(1, 2) = 1;
  std::vector<double> x = {1, 1, 1}, y(2);
  a.apply(x, y);
  CHECK(y[0] == 6.0);
  CHECK(y[1] == 0.0);
}

}  // TEST_SUITE
