#pragma once

// Corner quantities of the ladder L_n after reducing it onto its four end
// vertices p_n, q_n, p_1, q_1. The reduction is a complete graph whose edges
// come in three classes: side (p_n-p_1, q_n-q_1), rung (p_n-q_n, p_1-q_1)
// and diagonal (p_n-q_1, q_n-p_1).

#include "prismres/exact.hpp"
#include "prismres/network.hpp"

namespace prismres {

/// Pairwise parallel combinations of the reduced edge resistances, with
/// par(x, y) = xy / (x + y).
struct LadderParams {
  int n = 0;
  QS3 rung_diagonal;  ///< par(rung, diagonal) = -1 - sqrt3 + 2 sqrt3 / (1 - x^n)
  QS3 side_rung;      ///< par(side, rung)     = -1 - sqrt3 + 2 sqrt3 / (1 + x^n)
  QS3 side_diagonal;  ///< par(side, diagonal) = n - 1
};

/// Effective resistances between corners of L_n.
struct CornerResistances {
  QS3 rung;      ///< r(p_n, q_n) = r(p_1, q_1)
  QS3 side;      ///< r(p_n, p_1) = r(q_n, q_1)
  QS3 diagonal;  ///< r(p_n, q_1) = r(q_n, p_1)
};

/// Conductances of the reduced edges; zero means an open edge.
struct DeltaEdges {
  int n = 0;
  QS3 side;
  QS3 rung;
  QS3 diagonal;
};

/// Exact parameters with x = 2 - sqrt3. Throws std::invalid_argument for n < 1.
LadderParams ladder_params(int n);

/// rung = (A+B)/2, side = (B+C)/2, diagonal = (A+C)/2 in terms of the
/// rung_diagonal (A), side_rung (B) and side_diagonal (C) parameters.
CornerResistances ladder_corner_resistances(int n);

/// Solves 1/A = g_rung + g_diag, 1/B = g_side + g_rung, 1/C = g_side + g_diag.
/// Throws std::invalid_argument for n < 2, where the corners coincide.
DeltaEdges ladder_delta_edges(int n);

/// The 4x4 Laplacian of the reduced ladder in vertex order p_n, q_n, p_1, q_1.
/// Throws std::logic_error if a conductance is irrational.
SymMatrix<BigRat> corner_laplacian(const DeltaEdges& edges);

}  // namespace prismres
