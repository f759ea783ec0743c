#pragma once

// Closed forms for the prism graph Y_n: pairwise effective resistances,
// Kirchhoff index, Laplacian spectrum and the trigonometric sums tied to them.
//
// Vertices are p_1..p_n on one cycle and q_1..q_n on the other, with rungs
// p_i - q_i. Indices are 1-based.

#include "prismres/exact.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace prismres {

enum class Side { P, Q };

/// Same-cycle pair r(p_1, p_i) or cross pair r(p_1, q_i).
enum class PairKind { SameSide, CrossSide };

struct PrismVertex {
  Side side = Side::P;
  int index = 1;

  /// "p3", "q7".
  std::string label() const;
  /// Parses "p<i>" or "q<i>" with i >= 1. Throws std::invalid_argument.
  static PrismVertex parse(std::string_view label);
  bool valid_for(int n) const { return index >= 1 && index <= n; }

  friend bool operator==(const PrismVertex&, const PrismVertex&) = default;
};

/// Labels p1..pn, q1..qn, matching build_prism.
std::vector<std::string> prism_labels(int n);

/// Index i of the base pair (p_1, p_i) or (p_1, q_i) that (u, v) maps to
/// under the rotations and the p/q reflection of Y_n.
struct BasePair {
  int index;
  PairKind kind;
};

/// Throws std::invalid_argument for vertices outside 1..n.
BasePair resolve_pair(int n, const PrismVertex& u, const PrismVertex& v);

/// r(p_1, p_i) or r(p_1, q_i) from the G_n form, in Q(sqrt3), before the
/// irrational part is stripped. Throws std::invalid_argument for i outside 1..n.
QS3 resistance_base_qs3(int n, int i, PairKind kind);

/// Exact value; throws std::logic_error if the sqrt3 part fails to cancel.
BigRat resistance_base_exact(int n, int i, PairKind kind);

/// Float value from explicit powers of 2 - sqrt3.
double resistance_base_float(int n, int i, PairKind kind);

BigRat prism_resistance_exact(int n, const PrismVertex& u, const PrismVertex& v);
double prism_resistance_float(int n, const PrismVertex& u, const PrismVertex& v);

/// r(p_1, p_i) + r(p_1, q_i) = (1/sqrt3)(1 + x^n)/(1 - x^n) + (n-i+1)(i-1)/n.
BigRat prism_pair_sum(int n, int i);
double prism_pair_sum_float(int n, int i);

/// Builds r(p_1, p_i) or r(p_1, q_i) for 2 <= i <= n by joining the reduced
/// ladders L_i and L_{n-i}; evaluated in conductance form so the i = n
/// boundary stays finite.
BigRat resistance_via_reduction(int n, int i, PairKind kind);

/// n(n^2-1)/6 + 2n^2 G_n^2 / (G_{2n} - 2 G_n).
BigRat kirchhoff_closed(int n);

enum class KirchhoffRoute { Closed, Coth, Spectral };

double kirchhoff_float(int n, KirchhoffRoute route);

/// n sum_{k>=1} 1/(2 sin^2(k pi/n)) + n sum_{k>=0} 1/(1 + 2 sin^2(k pi/n)).
double kirchhoff_trig_split(int n);

struct PrismSpectrum {
  int n = 0;
  /// 2n values 4 - 2cos(i pi/2) - 2cos(2 j pi/n), ordered by (i, j).
  std::vector<double> eigenvalues;
  /// Position of the i = 0, j = 0 zero eigenvalue.
  std::size_t zero_index = 0;
};

PrismSpectrum prism_eigenvalues(int n);

/// sum_{k=0}^{n-1} 1 / (1 + 2 sin^2(k pi/n)).
double trig_sum_direct(int n);
/// 2n G_n^2 / (G_{2n} - 2 G_n).
BigRat trig_sum_closed(int n);

/// sum_{k=1}^{n-1} 1 / sin^2(k pi/n).
double csc2_sum(int n);
/// True iff csc2_sum(n) equals (n^2-1)/3 to within rel_tol relative.
bool csc2_sum_check(int n, double rel_tol = 1e-9);

/// Full 2n x 2n exact resistance matrix in prism_labels order.
std::vector<std::vector<BigRat>> resistance_table_exact(int n);

}  // namespace prismres
