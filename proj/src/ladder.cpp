#include "prismres/ladder.hpp"

#include <string>

namespace prismres {

namespace {

const QS3& minus_one_minus_sqrt3() {
  static const QS3 value(-1, -1);
  return value;
}

}  // namespace

LadderParams ladder_params(int n) {
  if (n < 1) throw std::invalid_argument("ladder_params: n must be >= 1, got " + std::to_string(n));
  const QS3 x_n = pow_2_minus_sqrt3(static_cast<unsigned>(n));
  const QS3 two_sqrt3 = QS3(0, 2);
  LadderParams params;
  params.n = n;
  params.rung_diagonal = minus_one_minus_sqrt3() + two_sqrt3 / (QS3(1) - x_n);
  params.side_rung = minus_one_minus_sqrt3() + two_sqrt3 / (QS3(1) + x_n);
  params.side_diagonal = QS3(n - 1);
  return params;
}

CornerResistances ladder_corner_resistances(int n) {
  const LadderParams p = ladder_params(n);
  const QS3 half(BigRat(1, 2));
  return CornerResistances{
      half * (p.rung_diagonal + p.side_rung),
      half * (p.side_rung + p.side_diagonal),
      half * (p.rung_diagonal + p.side_diagonal),
  };
}

DeltaEdges ladder_delta_edges(int n) {
  if (n < 2) throw std::invalid_argument("ladder_delta_edges: n must be >= 2, got " + std::to_string(n));
  const LadderParams p = ladder_params(n);
  const QS3 inv_a = inverse(p.rung_diagonal);
  const QS3 inv_b = inverse(p.side_rung);
  const QS3 inv_c = inverse(p.side_diagonal);
  const QS3 half(BigRat(1, 2));
  return DeltaEdges{
      n,
      half * (inv_b + inv_c - inv_a),
      half * (inv_a + inv_b - inv_c),
      half * (inv_a + inv_c - inv_b),
  };
}

SymMatrix<BigRat> corner_laplacian(const DeltaEdges& edges) {
  enum : std::size_t { p_n, q_n, p_1, q_1 };
  const BigRat side = edges.side.as_rational();
  const BigRat rung = edges.rung.as_rational();
  const BigRat diagonal = edges.diagonal.as_rational();
  SymMatrix<BigRat> m(4);
  const BigRat degree = side + rung + diagonal;
  for (std::size_t v : {p_n, q_n, p_1, q_1}) m(v, v) = degree;
  m(p_n, q_n) = m(p_1, q_1) = -rung;
  m(p_n, p_1) = m(q_n, q_1) = -side;
  m(p_n, q_1) = m(q_n, p_1) = -diagonal;
  return m;
}

}  // namespace prismres
