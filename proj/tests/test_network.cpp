#include "prismres/network.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace prismres;

namespace {

ExactNetwork from_edges(std::size_t order, const std::vector<oracle::Edge>& edges) {
  ExactNetwork net;
  for (std::size_t i = 0; i < order; ++i) net.add_vertex("v" + std::to_string(i));
  for (const auto& e : edges) net.add_edge(e.u, e.v, e.resistance);
  return net;
}

/// Connected multigraph: a random spanning path plus extra edges, parallel
/// edges and loops, with resistances k/d.
std::vector<oracle::Edge> random_edges(std::mt19937_64& rng, std::size_t order) {
  std::uniform_int_distribution<long> num(1, 9);
  std::uniform_int_distribution<unsigned long> den(1, 5);
  std::uniform_int_distribution<std::size_t> vertex(0, order - 1);
  std::vector<std::size_t> perm(order);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<oracle::Edge> edges;
  for (std::size_t i = 0; i + 1 < order; ++i) edges.push_back({perm[i], perm[i + 1], BigRat(num(rng), den(rng))});
  const std::size_t extra = order + vertex(rng);
  for (std::size_t k = 0; k < extra; ++k) {
    edges.push_back({vertex(rng), vertex(rng), BigRat(num(rng), den(rng))});
  }
  for (auto& e : edges) e.resistance.canonicalize();
  return edges;
}

ExactNetwork triangle() {
  ExactNetwork net;
  for (const char* v : {"a", "b", "c"}) net.add_vertex(v);
  net.add_edge("a", "b", BigRat(1));
  net.add_edge("b", "c", BigRat(1));
  net.add_edge("c", "a", BigRat(1));
  return net;
}

ExactNetwork unit_edge() {
  ExactNetwork net;
  net.add_vertex("p");
  net.add_vertex("q");
  net.add_edge("p", "q", BigRat(1));
  return net;
}

}  // namespace

TEST_CASE("prism and ladder construction") {
  const ExactNetwork y3 = build_prism(3);
  CHECK(y3.order() == 6);
  CHECK(y3.edges().size() == 9);
  for (const auto& e : y3.edges()) CHECK(e.resistance == 1);

  const ExactNetwork y1 = build_prism(1);
  CHECK(y1.order() == 2);
  CHECK(y1.edges().size() == 3);
  int loops = 0;
  for (const auto& e : y1.edges()) loops += e.is_loop() ? 1 : 0;
  CHECK(loops == 2);

  const ExactNetwork y2 = build_prism(2);
  CHECK(y2.order() == 4);
  CHECK(y2.edges().size() == 6);
  int p_sides = 0;
  for (const auto& e : y2.edges()) {
    if ((e.u == y2.index_of("p1") && e.v == y2.index_of("p2")) || (e.u == y2.index_of("p2") && e.v == y2.index_of("p1"))) {
      ++p_sides;
    }
  }
  CHECK(p_sides == 2);

  CHECK(build_ladder(1).edges().size() == 1);
  CHECK(build_ladder(2).edges().size() == 4);
  CHECK(build_ladder(3).edges().size() == 7);
  CHECK(build_ladder(3).order() == 6);
  for (int n = 1; n <= 12; ++n) {
    CHECK(build_prism(n).edges().size() == static_cast<std::size_t>(3 * n));
    CHECK(build_ladder(n).edges().size() == static_cast<std::size_t>(3 * n - 2));
  }
  CHECK_THROWS_AS(build_prism(0), std::invalid_argument);
  CHECK_THROWS_AS(build_ladder(-3), std::invalid_argument);
}

TEST_CASE("network construction errors") {
  ExactNetwork net;
  net.add_vertex("a");
  CHECK_THROWS_AS(net.add_vertex("a"), std::invalid_argument);
  CHECK_THROWS_AS(net.add_vertex(""), std::invalid_argument);
  CHECK_THROWS_AS(net.add_edge(0, 3, BigRat(1)), std::invalid_argument);
  CHECK_THROWS_AS(net.add_edge(0, 0, BigRat(0)), std::invalid_argument);
  CHECK_THROWS_AS(net.add_edge(0, 0, BigRat(-1)), std::invalid_argument);
  CHECK_THROWS_AS(net.index_of("zz"), std::out_of_range);
}

TEST_CASE("laplacian assembly") {
  const SymMatrix<BigRat> l = laplacian(unit_edge());
  CHECK(l(0, 0) == 1);
  CHECK(l(0, 1) == -1);
  CHECK(l(1, 1) == 1);

  const ExactNetwork y2 = build_prism(2);
  const SymMatrix<BigRat> l2 = laplacian(y2);
  for (std::size_t i = 0; i < 4; ++i) CHECK(l2(i, i) == 3);
  CHECK(l2(y2.index_of("p1"), y2.index_of("p2")) == -2);
  CHECK(l2(y2.index_of("q1"), y2.index_of("q2")) == -2);
  CHECK(l2(y2.index_of("p1"), y2.index_of("q1")) == -1);
  CHECK(l2(y2.index_of("p1"), y2.index_of("q2")) == 0);
  CHECK(l2.is_laplacian());

  // Loops leave the Laplacian untouched.
  const SymMatrix<BigRat> l1 = laplacian(build_prism(1));
  CHECK(l1 == l);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto edges = random_edges(rng, 7);
    CHECK(laplacian(from_edges(7, edges)).is_laplacian());
    CHECK(laplacian(to_float(from_edges(7, edges))).is_laplacian());
  }
}

TEST_CASE("pseudoinverse small cases") {
  const SymMatrix<BigRat> k2 = pinv_laplacian(laplacian(unit_edge()));
  CHECK(k2(0, 0) == BigRat(1, 4));
  CHECK(k2(0, 1) == BigRat(-1, 4));
  CHECK(k2(1, 1) == BigRat(1, 4));

  const SymMatrix<BigRat> lap3 = laplacian(triangle());
  const SymMatrix<BigRat> c3 = pinv_laplacian(lap3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(c3(i, j) == (i == j ? BigRat(2, 9) : BigRat(-1, 9)));
  }
  const auto residual = penrose_residual(lap3, c3);
  CHECK(residual.reproduce == 0);
  CHECK(residual.reflexive == 0);
  CHECK(residual.kernel == 0);
}

TEST_CASE("pseudoinverse contract on random networks") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t order = 2 + trial % 9;
    const ExactNetwork net = from_edges(order, random_edges(rng, order));
    const SymMatrix<BigRat> lap = laplacian(net);
    const auto exact = penrose_residual(lap, pinv_laplacian(lap));
    CHECK(exact.reproduce == 0);
    CHECK(exact.reflexive == 0);
    CHECK(exact.kernel == 0);

    const SymMatrix<double> lap_f = laplacian(to_float(net));
    const auto approx = penrose_residual(lap_f, pinv_laplacian(lap_f));
    CHECK(approx.reproduce <= 1e-10);
    CHECK(approx.reflexive <= 1e-10);
    CHECK(approx.kernel <= 1e-10);
  }
  const SymMatrix<double> big = laplacian(to_float(build_prism(100)));
  const auto r = penrose_residual(big, pinv_laplacian(big));
  CHECK(r.reproduce <= 1e-10);
  CHECK(r.reflexive <= 1e-10);
  CHECK(r.kernel <= 1e-10);
}

TEST_CASE("resistance queries") {
  CHECK(resistance_oracle(unit_edge(), "p", "q") == 1);
  const ExactNetwork tri = triangle();
  CHECK(resistance_oracle(tri, "a", "b") == BigRat(2, 3));
  CHECK(resistance_oracle(tri, "c", "a") == BigRat(2, 3));

  const ExactNetwork y2 = build_prism(2);
  const auto edges = oracle::prism_edges(2);
  CHECK(oracle::grounded_resistance(4, edges, 0, 2) == BigRat(2, 3));
  CHECK(oracle::grounded_resistance(4, edges, 0, 1) == BigRat(5, 12));
  CHECK(oracle::grounded_resistance(4, edges, 0, 3) == BigRat(3, 4));
  CHECK(resistance_oracle(y2, "p1", "q1") == BigRat(2, 3));
  CHECK(resistance_oracle(y2, "p1", "p2") == BigRat(5, 12));
  CHECK(resistance_oracle(y2, "p1", "q2") == BigRat(3, 4));
  CHECK(resistance_oracle(y2, "q2", "q2") == 0);

  const double f = resistance_oracle(to_float(y2), "p1", "p2");
  CHECK(f == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("oracle agrees with grounded solve and is a metric") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t order = 3 + trial % 6;
    const auto edges = random_edges(rng, order);
    const ResistanceOracle<BigRat> oracle_r(from_edges(order, edges));
    for (std::size_t u = 0; u < order; ++u) {
      CHECK(oracle_r.resistance(u, u) == 0);
      for (std::size_t v = 0; v < order; ++v) {
        CHECK(oracle_r.resistance(u, v) == oracle_r.resistance(v, u));
        if (u != v) {
          CHECK(oracle_r.resistance(u, v) > 0);
          CHECK(oracle_r.resistance(u, v) == oracle::grounded_resistance(order, edges, u, v));
        }
        for (std::size_t w = 0; w < order; ++w) {
          CHECK(oracle_r.resistance(u, w) <= oracle_r.resistance(u, v) + oracle_r.resistance(v, w));
        }
      }
    }
  }
}

TEST_CASE("kirchhoff index") {
  CHECK(kirchhoff_oracle(unit_edge()) == 1);
  CHECK(kirchhoff_oracle(build_prism(2)) == BigRat(11, 3));
  CHECK(kirchhoff_oracle(build_prism(5)) == BigRat(655, 19));
  for (int n = 1; n <= 12; ++n) {
    const ResistanceOracle<BigRat> r(build_prism(n));
    CHECK(r.kirchhoff() == r.kirchhoff_from_trace());
  }
}

TEST_CASE("foster sum over edges") {
  for (int n = 1; n <= 30; ++n) {
    for (const ExactNetwork& net : {build_prism(n), build_ladder(n)}) {
      const ResistanceOracle<BigRat> r(net);
      BigRat sum(0);
      for (const auto& e : net.edges()) sum += r.resistance(e.u, e.v);
      CHECK(sum == 2 * n - 1);
    }
  }
}

TEST_CASE("matrix-tree counts") {
  CHECK(matrix_tree_count(triangle()) == 3);
  CHECK(matrix_tree_count(build_prism(3)) == 75);
  CHECK(matrix_tree_count(build_ladder(4)) == 56);
  CHECK(matrix_tree_count(build_prism(1)) == 1);

  ExactNetwork split;
  for (const char* v : {"a", "b", "c", "d"}) split.add_vertex(v);
  split.add_edge("a", "b", BigRat(1));
  split.add_edge("c", "d", BigRat(1));
  CHECK(matrix_tree_count(split) == 0);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t order = 2 + trial % 5;
    const auto edges = random_edges(rng, order);
    CHECK(matrix_tree_count(from_edges(order, edges)) == oracle::brute_force_spanning_trees(order, edges));
  }

  ExactNetwork weighted;
  for (const char* v : {"a", "b", "c"}) weighted.add_vertex(v);
  weighted.add_edge("a", "b", BigRat(1));
  weighted.add_edge("b", "c", BigRat(2));
  weighted.add_edge("c", "a", BigRat(3));
  // 1*1/2 + 1*1/3 + 1/2*1/3
  CHECK(tree_weight_sum(weighted) == 1);
  CHECK(tree_weight_sum(build_prism(4)) == BigRat(matrix_tree_count(build_prism(4))));
}

TEST_CASE("disconnected networks are rejected") {
  ExactNetwork split;
  for (const char* v : {"a", "b", "c"}) split.add_vertex(v);
  split.add_edge("a", "b", BigRat(1));
  split.add_edge("c", "c", BigRat(1));
  CHECK_FALSE(split.connected());
  CHECK_THROWS_AS(resistance_oracle(split, "a", "b"), DisconnectedNetwork);
  CHECK_THROWS_AS(kirchhoff_oracle(to_float(split)), DisconnectedNetwork);
  CHECK_THROWS_AS(pinv_laplacian(laplacian(split)), DisconnectedNetwork);
  CHECK_THROWS_AS(kron_reduce(split, TerminalSet({0, 1}, 3)), DisconnectedNetwork);
}

TEST_CASE("terminal sets validate their indices") {
  CHECK_THROWS_AS(TerminalSet({}, 3), std::invalid_argument);
  CHECK_THROWS_AS(TerminalSet({0, 0}, 3), std::invalid_argument);
  CHECK_THROWS_AS(TerminalSet({5}, 3), std::invalid_argument);
  CHECK(TerminalSet({2, 0}, 3).indices() == std::vector<std::size_t>{2, 0});
}

TEST_CASE("kron reduction") {
  ExactNetwork path;
  for (const char* v : {"a", "b", "c"}) path.add_vertex(v);
  path.add_edge("a", "b", BigRat(1));
  path.add_edge("b", "c", BigRat(1));
  const ExactNetwork series = kron_reduce(path, TerminalSet::from_labels(path, {"a", "c"}));
  REQUIRE(series.edges().size() == 1);
  CHECK(series.edges()[0].resistance == 2);
  CHECK(series.labels() == std::vector<std::string>{"a", "c"});

  const FloatNetwork series_f = kron_reduce(to_float(path), TerminalSet::from_labels(path, {"a", "c"}));
  REQUIRE(series_f.edges().size() == 1);
  CHECK(series_f.edges()[0].resistance == doctest::Approx(2.0));

  // Corners of L_2 are already a 4-cycle; no diagonal edge appears.
  const ExactNetwork l2 = build_ladder(2);
  CHECK(kron_reduce(l2, TerminalSet::from_labels(l2, {"p2", "q2", "p1", "q1"})).edges().size() == 4);
  CHECK(kron_reduce(to_float(l2), TerminalSet::from_labels(l2, {"p2", "q2", "p1", "q1"})).edges().size() == 4);

  // Corner resistances of L_3 from the grounded oracle fix the reduced
  // complete graph: r_rung = 11/15, r_side = 4/3, r_diag = 7/5 give conductances
  // side 3/8, rung 9/8, diagonal 1/8.
  const auto ladder = oracle::ladder_edges(3);
  CHECK(oracle::grounded_resistance(6, ladder, 2, 5) == BigRat(11, 15));
  CHECK(oracle::grounded_resistance(6, ladder, 2, 0) == BigRat(4, 3));
  CHECK(oracle::grounded_resistance(6, ladder, 2, 3) == BigRat(7, 5));
  const ExactNetwork l3 = build_ladder(3);
  const ExactNetwork k4 = kron_reduce(l3, TerminalSet::from_labels(l3, {"p1", "q1", "p3", "q3"}));
  REQUIRE(k4.edges().size() == 6);
  for (const auto& e : k4.edges()) {
    const std::string a = k4.labels()[e.u];
    const std::string b = k4.labels()[e.v];
    if (a[0] == b[0]) {
      CHECK(e.resistance == BigRat(8, 3));
    } else if (a[1] == b[1]) {
      CHECK(e.resistance == BigRat(8, 9));
    } else {
      CHECK(e.resistance == 8);
    }
  }
}

TEST_CASE("kron reduction preserves terminal resistances") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t order = 4 + trial % 6;
    const ExactNetwork net = from_edges(order, random_edges(rng, order));
    std::vector<std::size_t> all(order);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(2 + trial % (order - 2));
    const TerminalSet keep(all, order);
    const ExactNetwork reduced = kron_reduce(net, keep);
    CHECK(laplacian(reduced) == schur_complement(laplacian(net), keep));
    const ResistanceOracle<BigRat> full(net);
    const ResistanceOracle<BigRat> small(reduced);
    for (std::size_t a = 0; a < keep.size(); ++a) {
      for (std::size_t b = 0; b < keep.size(); ++b) {
        CHECK(small.resistance(a, b) == full.resistance(keep.indices()[a], keep.indices()[b]));
      }
    }
  }
}

TEST_CASE("eight-terminal stencil is a laplacian") {
  const EightTerminalStencil stencil{BigRat(1, 2), BigRat(3), BigRat(0), BigRat(2, 7), BigRat(5), BigRat(1, 9)};
  const SymMatrix<BigRat> l = stencil.laplacian();
  CHECK(l.is_laplacian());
  CHECK(l(0, 0) == 1 + BigRat(2, 7) + 5 + BigRat(1, 9));
  CHECK(l(2, 2) == BigRat(1, 2) + 3 + 1);
  CHECK(l(0, 3) == -1);
  CHECK(l(2, 7) == 0);
}

TEST_CASE("numeric spectrum of a small laplacian") {
  const auto values = symmetric_eigenvalues(laplacian(to_float(triangle())));
  REQUIRE(values.size() == 3);
  CHECK(values[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(values[1] == doctest::Approx(3.0));
  CHECK(values[2] == doctest::Approx(3.0));
}
