#include "prismres/ladder.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace prismres;

namespace {

struct Corners {
  std::size_t p1, pn, q1, qn;
};

Corners corners_of(int n) {
  const auto un = static_cast<std::size_t>(n);
  return {0, un - 1, un, 2 * un - 1};
}

std::vector<oracle::Edge> delta_network(const DeltaEdges& d) {
  // Vertices p_n, q_n, p_1, q_1; zero conductances are open.
  std::vector<oracle::Edge> edges;
  const auto add = [&](std::size_t u, std::size_t v, const QS3& g) {
    if (!g.is_zero()) edges.push_back({u, v, BigRat(1 / g.as_rational())});
  };
  add(0, 2, d.side);
  add(1, 3, d.side);
  add(0, 1, d.rung);
  add(2, 3, d.rung);
  add(0, 3, d.diagonal);
  add(1, 2, d.diagonal);
  return edges;
}

}  // namespace

TEST_CASE("parameters for short ladders") {
  const LadderParams one = ladder_params(1);
  CHECK(one.rung_diagonal == QS3(2));
  CHECK(one.side_rung == QS3(0));
  CHECK(one.side_diagonal == QS3(0));

  const LadderParams two = ladder_params(2);
  CHECK(two.rung_diagonal == QS3(1));
  CHECK(two.side_rung == QS3(BigRat(1, 2)));
  CHECK(two.side_diagonal == QS3(1));

  const LadderParams three = ladder_params(3);
  CHECK(three.rung_diagonal == QS3(BigRat(4, 5)));
  CHECK(three.side_rung == QS3(BigRat(2, 3)));
  CHECK(three.side_diagonal == QS3(2));

  CHECK_THROWS_AS(ladder_params(0), std::invalid_argument);
}

TEST_CASE("parameters are rational and bracket sqrt3 - 1") {
  const QS3 limit = sqrt3() - QS3(1);
  for (int n = 1; n <= 80; ++n) {
    const LadderParams p = ladder_params(n);
    CHECK(p.rung_diagonal.is_rational());
    CHECK(p.side_rung.is_rational());
    CHECK(p.side_diagonal == QS3(n - 1));
    CHECK((p.rung_diagonal - limit).sign() > 0);
    CHECK((limit - p.side_rung).sign() > 0);
    if (n >= 2) {
      const LadderParams prev = ladder_params(n - 1);
      CHECK((prev.rung_diagonal - p.rung_diagonal).sign() > 0);
      CHECK((p.side_rung - prev.side_rung).sign() > 0);
    }
  }
  const LadderParams far = ladder_params(40);
  CHECK(far.rung_diagonal.to_double() == doctest::Approx(std::sqrt(3.0) - 1.0).epsilon(1e-15));
}

TEST_CASE("corner resistances of short ladders") {
  const CornerResistances one = ladder_corner_resistances(1);
  CHECK(one.rung == QS3(1));
  CHECK(one.side == QS3(0));
  CHECK(one.diagonal == QS3(1));

  const CornerResistances two = ladder_corner_resistances(2);
  CHECK(two.rung == QS3(BigRat(3, 4)));
  CHECK(two.side == QS3(BigRat(3, 4)));
  CHECK(two.diagonal == QS3(1));

  const CornerResistances three = ladder_corner_resistances(3);
  CHECK(three.rung == QS3(BigRat(11, 15)));
  CHECK(three.side == QS3(BigRat(4, 3)));
  CHECK(three.diagonal == QS3(BigRat(7, 5)));
}

TEST_CASE("corner resistances match a grounded solve") {
  for (int n = 1; n <= 25; ++n) {
    const auto edges = oracle::ladder_edges(n);
    const std::size_t order = static_cast<std::size_t>(2 * n);
    const Corners c = corners_of(n);
    const CornerResistances r = ladder_corner_resistances(n);
    CHECK(r.rung == QS3(oracle::grounded_resistance(order, edges, c.pn, c.qn)));
    CHECK(r.rung == QS3(oracle::grounded_resistance(order, edges, c.p1, c.q1)));
    CHECK(r.side == QS3(oracle::grounded_resistance(order, edges, c.pn, c.p1)));
    CHECK(r.side == QS3(oracle::grounded_resistance(order, edges, c.qn, c.q1)));
    CHECK(r.diagonal == QS3(oracle::grounded_resistance(order, edges, c.pn, c.q1)));
    CHECK(r.diagonal == QS3(oracle::grounded_resistance(order, edges, c.qn, c.p1)));
  }
}

TEST_CASE("reduced edges of short ladders") {
  const DeltaEdges two = ladder_delta_edges(2);
  CHECK(two.side == QS3(1));
  CHECK(two.rung == QS3(1));
  CHECK(two.diagonal == QS3(0));

  const DeltaEdges three = ladder_delta_edges(3);
  CHECK(three.side == QS3(BigRat(3, 8)));
  CHECK(three.rung == QS3(BigRat(9, 8)));
  CHECK(three.diagonal == QS3(BigRat(1, 8)));

  CHECK_THROWS_AS(ladder_delta_edges(1), std::invalid_argument);
}

TEST_CASE("reduced edges reproduce the corner resistances") {
  for (int n = 2; n <= 20; ++n) {
    const DeltaEdges d = ladder_delta_edges(n);
    CHECK(d.side.sign() > 0);
    CHECK(d.rung.sign() > 0);
    CHECK(d.diagonal.sign() >= 0);
    const auto k4 = delta_network(d);
    const auto ladder = oracle::ladder_edges(n);
    const std::size_t order = static_cast<std::size_t>(2 * n);
    const Corners c = corners_of(n);
    const std::size_t full[4] = {c.pn, c.qn, c.p1, c.q1};
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = a + 1; b < 4; ++b) {
        CHECK(oracle::grounded_resistance(4, k4, a, b) ==
              oracle::grounded_resistance(order, ladder, full[a], full[b]));
      }
    }
  }
}

TEST_CASE("kron reduction of the ladder gives the corner laplacian") {
  for (int n = 2; n <= 40; ++n) {
    const ExactNetwork ladder = build_ladder(n);
    const Corners c = corners_of(n);
    const TerminalSet ends({c.pn, c.qn, c.p1, c.q1}, ladder.order());
    const SymMatrix<BigRat> expected = corner_laplacian(ladder_delta_edges(n));
    CHECK(expected.is_laplacian());
    CHECK(schur_complement(laplacian(ladder), ends) == expected);
  }
}

TEST_CASE("eight-terminal stencil of the prism") {
  for (int n : {4, 7, 12}) {
    const ExactNetwork prism = build_prism(n);
    const auto edges = oracle::prism_edges(n);
    const std::size_t order = prism.order();
    for (int i = 3; i <= n - 1; ++i) {
      const auto p = [](int k) { return static_cast<std::size_t>(k - 1); };
      const auto q = [n](int k) { return static_cast<std::size_t>(n + k - 1); };
      const TerminalSet keep({p(1), p(i - 1), p(i), p(n), q(1), q(i - 1), q(i), q(n)}, order);
      const DeltaEdges lower = ladder_delta_edges(i - 1);
      const DeltaEdges upper = ladder_delta_edges(n - i + 1);
      const EightTerminalStencil stencil{upper.side.as_rational(),  upper.rung.as_rational(),
                                         upper.diagonal.as_rational(), lower.side.as_rational(),
                                         lower.rung.as_rational(),  lower.diagonal.as_rational()};
      const SymMatrix<BigRat> l = stencil.laplacian();
      CHECK(laplacian(kron_reduce(prism, keep)) == l);
      CHECK(l(0, 0) == stencil.lower_degree());
      CHECK(l(2, 2) == stencil.upper_degree());

      std::vector<oracle::Edge> reduced;
      for (std::size_t a = 0; a < 8; ++a) {
        for (std::size_t b = a + 1; b < 8; ++b) {
          if (sgn(l(a, b)) != 0) reduced.push_back({a, b, BigRat(-1 / l(a, b))});
        }
      }
      for (std::size_t a = 0; a < 8; ++a) {
        for (std::size_t b = a + 1; b < 8; ++b) {
          CHECK(oracle::grounded_resistance(8, reduced, a, b) ==
                oracle::grounded_resistance(order, edges, keep.indices()[a], keep.indices()[b]));
        }
      }
    }
  }
}
