#include "prismres/prism.hpp"

#include "prismres/genfib.hpp"
#include "prismres/ladder.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace prismres {

namespace {

void require_order(int n, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": n must be >= 1, got " + std::to_string(n));
}

void require_index(int n, int i, const char* what) {
  require_order(n, what);
  if (i < 1 || i > n) {
    throw std::invalid_argument(std::string(what) + ": index " + std::to_string(i) + " outside 1.." +
                                std::to_string(n));
  }
}

/// (n-i+1)(i-1)/n, the cycle contribution shared by both pair kinds.
BigRat cycle_term(int n, int i) {
  BigRat t(BigInt(n - i + 1) * (i - 1), BigInt(n));
  t.canonicalize();
  return t;
}

/// G_n^2 / (G_{2n} - 2 G_n).
BigRat fib_ratio(int n) {
  const BigInt g = gfib(n);
  BigRat ratio(BigInt(g * g), BigInt(gfib(2 * n) - 2 * g));
  ratio.canonicalize();
  return ratio;
}

enum class LadderParam { RungDiagonal, SideRung, SideDiagonal };

const QS3& pick(const LadderParams& p, LadderParam which) {
  switch (which) {
    case LadderParam::RungDiagonal:
      return p.rung_diagonal;
    case LadderParam::SideRung:
      return p.side_rung;
    case LadderParam::SideDiagonal:
      break;
  }
  return p.side_diagonal;
}

/// Conductance of the branch 2 + X_m closing the cycle through the far ladder
/// L_m. At m = 0 the closed forms give side_diagonal = side_rung = -1, and
/// rung_diagonal has a pole, i.e. an open branch.
QS3 outer_branch_conductance(int m, LadderParam which) {
  if (m == 0) return which == LadderParam::RungDiagonal ? QS3(0) : QS3(1);
  return inverse(QS3(2) + pick(ladder_params(m), which));
}

QS3 inner_branch_conductance(int m, LadderParam which) { return inverse(pick(ladder_params(m), which)); }

}  // namespace

std::string PrismVertex::label() const { return (side == Side::P ? "p" : "q") + std::to_string(index); }

PrismVertex PrismVertex::parse(std::string_view label) {
  const auto fail = [&] { return std::invalid_argument("bad vertex label '" + std::string(label) + "'"); };
  if (label.size() < 2 || label.size() > 10) throw fail();
  PrismVertex v;
  switch (label.front()) {
    case 'p':
    case 'P':
      v.side = Side::P;
      break;
    case 'q':
    case 'Q':
      v.side = Side::Q;
      break;
    default:
      throw fail();
  }
  long index = 0;
  for (char c : label.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw fail();
    index = index * 10 + (c - '0');
  }
  if (index < 1 || index > 1'000'000'000L) throw fail();
  v.index = static_cast<int>(index);
  return v;
}

std::vector<std::string> prism_labels(int n) {
  require_order(n, "prism_labels");
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(2 * n));
  for (int i = 1; i <= n; ++i) labels.push_back("p" + std::to_string(i));
  for (int i = 1; i <= n; ++i) labels.push_back("q" + std::to_string(i));
  return labels;
}

BasePair resolve_pair(int n, const PrismVertex& u, const PrismVertex& v) {
  require_order(n, "resolve_pair");
  if (!u.valid_for(n) || !v.valid_for(n)) {
    throw std::invalid_argument("vertex " + (u.valid_for(n) ? v : u).label() + " is not in Y_" + std::to_string(n));
  }
  const int offset = ((v.index - u.index) % n + n) % n;
  return BasePair{offset + 1, u.side == v.side ? PairKind::SameSide : PairKind::CrossSide};
}

QS3 resistance_base_qs3(int n, int i, PairKind kind) {
  require_index(n, i, "resistance_base_qs3");
  const BigRat ratio = fib_ratio(n);
  const QS3 base(BigRat(cycle_term(n, i) / 2 + ratio));
  // 1/(4 sqrt3) = sqrt3/12.
  const QS3 coefficient(BigRat(ratio / 2), BigRat(1, 12));
  const QS3 powers = pow_2_minus_sqrt3(static_cast<unsigned>(n - i + 1)) +
                     pow_2_minus_sqrt3(static_cast<unsigned>(i - 1));
  return kind == PairKind::SameSide ? base - coefficient * powers : base + coefficient * powers;
}

BigRat resistance_base_exact(int n, int i, PairKind kind) {
  return resistance_base_qs3(n, i, kind).as_rational();
}

double resistance_base_float(int n, int i, PairKind kind) {
  require_index(n, i, "resistance_base_float");
  const double r3 = std::numbers::sqrt3;
  const double x = 2.0 - r3;
  const double xn = std::pow(x, n);
  const double outer = std::pow(x, n - i + 1) + std::pow(x, i - 1);
  const double num = kind == PairKind::SameSide ? 1.0 + xn - outer : 1.0 + xn + outer;
  const double cycle = static_cast<double>(n - i + 1) * static_cast<double>(i - 1) / (2.0 * n);
  return num / (2.0 * r3 * (1.0 - xn)) + cycle;
}

BigRat prism_resistance_exact(int n, const PrismVertex& u, const PrismVertex& v) {
  const BasePair base = resolve_pair(n, u, v);
  return resistance_base_exact(n, base.index, base.kind);
}

double prism_resistance_float(int n, const PrismVertex& u, const PrismVertex& v) {
  const BasePair base = resolve_pair(n, u, v);
  return resistance_base_float(n, base.index, base.kind);
}

BigRat prism_pair_sum(int n, int i) {
  require_index(n, i, "prism_pair_sum");
  const QS3 xn = pow_2_minus_sqrt3(static_cast<unsigned>(n));
  const QS3 value = (QS3(1) + xn) / (sqrt3() * (QS3(1) - xn)) + QS3(cycle_term(n, i));
  return value.as_rational();
}

double prism_pair_sum_float(int n, int i) {
  require_index(n, i, "prism_pair_sum_float");
  const double xn = std::pow(2.0 - std::numbers::sqrt3, n);
  return (1.0 + xn) / (std::numbers::sqrt3 * (1.0 - xn)) +
         static_cast<double>(n - i + 1) * static_cast<double>(i - 1) / n;
}

BigRat resistance_via_reduction(int n, int i, PairKind kind) {
  require_index(n, i, "resistance_via_reduction");
  if (i < 2) throw std::invalid_argument("resistance_via_reduction: index must be >= 2");
  const int far = n - i;
  const auto branch = [&](LadderParam which) {
    return inverse(outer_branch_conductance(far, which) + inner_branch_conductance(i, which));
  };
  const QS3 first = branch(LadderParam::SideDiagonal);
  const QS3 second =
      branch(kind == PairKind::SameSide ? LadderParam::SideRung : LadderParam::RungDiagonal);
  return (QS3(BigRat(1, 2)) * (first + second)).as_rational();
}

BigRat kirchhoff_closed(int n) {
  require_order(n, "kirchhoff_closed");
  BigRat cubic(BigInt(n) * (BigInt(n) * n - 1), BigInt(6));
  cubic.canonicalize();
  return BigRat(cubic + 2 * BigRat(BigInt(n) * n) * fib_ratio(n));
}

double kirchhoff_float(int n, KirchhoffRoute route) {
  require_order(n, "kirchhoff_float");
  const double nd = n;
  const double cubic = nd * (nd * nd - 1.0) / 6.0;
  const double r3 = std::numbers::sqrt3;
  switch (route) {
    case KirchhoffRoute::Closed: {
      const double xn = std::pow(2.0 - r3, n);
      return cubic + nd * nd / r3 * (2.0 / (1.0 - xn) - 1.0);
    }
    case KirchhoffRoute::Coth: {
      const double y = 0.5 * nd * std::log(2.0 - r3);
      return cubic - nd * nd / r3 / std::tanh(y);
    }
    case KirchhoffRoute::Spectral: {
      const PrismSpectrum spectrum = prism_eigenvalues(n);
      double sum = 0.0;
      for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) {
        if (k != spectrum.zero_index) sum += 1.0 / spectrum.eigenvalues[k];
      }
      return 2.0 * nd * sum;
    }
  }
  throw std::invalid_argument("kirchhoff_float: unknown route");
}

double kirchhoff_trig_split(int n) {
  require_order(n, "kirchhoff_trig_split");
  double cycle = 0.0;
  for (int k = 1; k < n; ++k) {
    const double s = std::sin(k * std::numbers::pi / n);
    cycle += 1.0 / (2.0 * s * s);
  }
  return n * cycle + n * trig_sum_direct(n);
}

PrismSpectrum prism_eigenvalues(int n) {
  require_order(n, "prism_eigenvalues");
  PrismSpectrum spectrum;
  spectrum.n = n;
  spectrum.eigenvalues.reserve(static_cast<std::size_t>(2 * n));
  for (int i = 0; i <= 1; ++i) {
    for (int j = 0; j < n; ++j) {
      spectrum.eigenvalues.push_back(4.0 - 2.0 * std::cos(i * std::numbers::pi / 2.0) -
                                     2.0 * std::cos(2.0 * j * std::numbers::pi / n));
    }
  }
  spectrum.zero_index = 0;
  return spectrum;
}

double trig_sum_direct(int n) {
  require_order(n, "trig_sum_direct");
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double s = std::sin(k * std::numbers::pi / n);
    sum += 1.0 / (1.0 + 2.0 * s * s);
  }
  return sum;
}

BigRat trig_sum_closed(int n) {
  require_order(n, "trig_sum_closed");
  return BigRat(2 * n * fib_ratio(n));
}

double csc2_sum(int n) {
  if (n < 2) throw std::invalid_argument("csc2_sum: n must be >= 2");
  double sum = 0.0;
  for (int k = 1; k < n; ++k) {
    const double s = std::sin(k * std::numbers::pi / n);
    sum += 1.0 / (s * s);
  }
  return sum;
}

bool csc2_sum_check(int n, double rel_tol) {
  const double expected = (static_cast<double>(n) * n - 1.0) / 3.0;
  return std::abs(csc2_sum(n) - expected) <= rel_tol * expected;
}

std::vector<std::vector<BigRat>> resistance_table_exact(int n) {
  require_order(n, "resistance_table_exact");
  std::vector<BigRat> same(static_cast<std::size_t>(n) + 1);
  std::vector<BigRat> cross(static_cast<std::size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) {
    same[static_cast<std::size_t>(i)] = resistance_base_exact(n, i, PairKind::SameSide);
    cross[static_cast<std::size_t>(i)] = resistance_base_exact(n, i, PairKind::CrossSide);
  }
  const auto size = static_cast<std::size_t>(2 * n);
  std::vector<std::vector<BigRat>> table(size, std::vector<BigRat>(size));
  const auto vertex = [n](std::size_t k) {
    const int idx = static_cast<int>(k);
    return idx < n ? PrismVertex{Side::P, idx + 1} : PrismVertex{Side::Q, idx - n + 1};
  };
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      const BasePair base = resolve_pair(n, vertex(a), vertex(b));
      const auto& column = base.kind == PairKind::SameSide ? same : cross;
      table[a][b] = column[static_cast<std::size_t>(base.index)];
    }
  }
  return table;
}

}  // namespace prismres
