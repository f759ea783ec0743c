#include "prismres/network.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <queue>

namespace prismres {

namespace {

// Per-scalar hooks for elimination and comparisons.
template <class Scalar>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;
  static double shadow(double v) { return std::abs(v); }
  static bool is_zero(double v) { return v == 0.0; }
  static double abs(double v) { return std::abs(v); }
  static double inverse(double v) { return 1.0 / v; }
  static double from_rational(const BigRat& v) { return v.get_d(); }
};

template <>
struct ScalarOps<BigRat> {
  static constexpr bool exact = true;
  static double shadow(const BigRat& v) { return std::abs(v.get_d()); }
  static bool is_zero(const BigRat& v) { return sgn(v) == 0; }
  static BigRat abs(const BigRat& v) { return BigRat(::abs(v)); }
  static BigRat inverse(const BigRat& v) { return BigRat(1 / v); }
  static BigRat from_rational(const BigRat& v) { return v; }
};

constexpr double kSingularRelTol = 1e-12;
constexpr double kDropTol = 1e-12;

template <class Scalar>
Scalar max_abs(const DenseMatrix<Scalar>& m) {
  Scalar best(0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Scalar v = ScalarOps<Scalar>::abs(m(i, j));
      if (v > best) best = v;
    }
  }
  return best;
}

template <class Scalar>
void subtract_in_place(DenseMatrix<Scalar>& lhs, const DenseMatrix<Scalar>& rhs) {
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (std::size_t j = 0; j < lhs.cols(); ++j) lhs(i, j) -= rhs(i, j);
  }
}

// Integer determinant by Bareiss fraction-free elimination.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return BigInt(1);
  int sign = 1;
  BigInt previous(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && sgn(a[swap_row][k]) == 0) ++swap_row;
      if (swap_row == n) return BigInt(0);
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
      }
      a[i][k] = 0;
    }
    previous = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : BigInt(-a[n - 1][n - 1]);
}

BigRat rational_determinant(DenseMatrix<BigRat> a) {
  const std::size_t n = a.rows();
  BigRat det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    double best = -1.0;
    for (std::size_t i = k; i < n; ++i) {
      if (sgn(a(i, k)) != 0 && ScalarOps<BigRat>::shadow(a(i, k)) > best) {
        best = ScalarOps<BigRat>::shadow(a(i, k));
        pivot = i;
      }
    }
    if (pivot == n) return BigRat(0);
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      BigRat f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) {
        if (sgn(a(k, j)) != 0) a(i, j) -= f * a(k, j);
      }
    }
  }
  return det;
}

std::string prism_label(char side, int index) { return side + std::to_string(index); }

DenseMatrix<BigRat> invert_shifted(DenseMatrix<BigRat> shifted, const SymMatrix<BigRat>&) {
  const std::size_t n = shifted.rows();
  try {
    return solve(std::move(shifted), DenseMatrix<BigRat>::identity(n));
  } catch (const std::domain_error&) {
    throw DisconnectedNetwork();
  }
}

/// LU with partial pivoting; a reciprocal condition estimate below 1e-13 is
/// taken as singular. One refinement step follows, with the residual
/// I - (L - J/N) X accumulated in long double.
DenseMatrix<double> invert_shifted(const DenseMatrix<double>& shifted, const SymMatrix<double>& lap) {
  const std::size_t n = shifted.rows();
  const auto en = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(en, en);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = shifted(i, j);
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  if (!(lu.rcond() > 1e-13)) throw DisconnectedNetwork();
  Eigen::MatrixXd x = lu.inverse();

  std::vector<std::vector<std::pair<std::size_t, double>>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (lap(i, k) != 0.0) rows[i].emplace_back(k, lap(i, k));
    }
  }
  const long double share = 1.0L / static_cast<long double>(n);
  Eigen::MatrixXd residual(en, en);
  std::vector<long double> column_sum(n);
  for (std::size_t j = 0; j < n; ++j) {
    long double sum = 0.0L;
    for (std::size_t k = 0; k < n; ++k) sum += x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
    column_sum[j] = sum;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      long double acc = (i == j ? 1.0L : 0.0L) + share * column_sum[j];
      for (const auto& [k, value] : rows[i]) {
        acc -= static_cast<long double>(value) * x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
      }
      residual(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = static_cast<double>(acc);
    }
  }
  x.noalias() += x * residual;

  DenseMatrix<double> out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  return out;
}

}  // namespace

// --- DenseMatrix ----------------------------------------------------------

template <class Scalar>
DenseMatrix<Scalar> DenseMatrix<Scalar>::identity(std::size_t order) {
  DenseMatrix m(order, order);
  for (std::size_t i = 0; i < order; ++i) m(i, i) = Scalar(1);
  return m;
}

template <class Scalar>
DenseMatrix<Scalar> DenseMatrix<Scalar>::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

template <class Scalar>
DenseMatrix<Scalar> multiply(const DenseMatrix<Scalar>& lhs, const DenseMatrix<Scalar>& rhs) {
  if (lhs.cols() != rhs.rows()) throw std::invalid_argument("multiply: shape mismatch");
  DenseMatrix<Scalar> out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    Scalar* out_row = &out(i, 0);
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Scalar& f = lhs(i, k);
      if (ScalarOps<Scalar>::is_zero(f)) continue;
      const Scalar* rhs_row = &rhs(k, 0);
      for (std::size_t j = 0; j < rhs.cols(); ++j) {
        if constexpr (ScalarOps<Scalar>::exact) {
          if (sgn(rhs_row[j]) == 0) continue;
        }
        out_row[j] += f * rhs_row[j];
      }
    }
  }
  return out;
}

template <class Scalar>
DenseMatrix<Scalar> solve(DenseMatrix<Scalar> lhs, DenseMatrix<Scalar> rhs) {
  using Ops = ScalarOps<Scalar>;
  const std::size_t n = lhs.rows();
  if (lhs.cols() != n || rhs.rows() != n) throw std::invalid_argument("solve: shape mismatch");
  const std::size_t m = rhs.cols();

  double scale = 0.0;
  if constexpr (!Ops::exact) scale = max_abs(lhs);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = n;
    double best = -1.0;
    for (std::size_t i = k; i < n; ++i) {
      if (Ops::is_zero(lhs(i, k))) continue;
      double s = Ops::shadow(lhs(i, k));
      if (s > best) {
        best = s;
        pivot = i;
      }
    }
    if (pivot == n || (!Ops::exact && best <= kSingularRelTol * scale)) {
      throw std::domain_error("solve: singular matrix");
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lhs(k, j), lhs(pivot, j));
      for (std::size_t j = 0; j < m; ++j) std::swap(rhs(k, j), rhs(pivot, j));
    }

    const Scalar inv = Ops::inverse(lhs(k, k));
    for (std::size_t j = k; j < n; ++j) lhs(k, j) *= inv;
    for (std::size_t j = 0; j < m; ++j) {
      if (!Ops::is_zero(rhs(k, j))) rhs(k, j) *= inv;
    }

    const Scalar* pivot_lhs = &lhs(k, 0);
    const Scalar* pivot_rhs = &rhs(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || Ops::is_zero(lhs(i, k))) continue;
      const Scalar f = lhs(i, k);
      Scalar* row_lhs = &lhs(i, 0);
      Scalar* row_rhs = &rhs(i, 0);
      for (std::size_t j = k; j < n; ++j) {
        if constexpr (Ops::exact) {
          if (sgn(pivot_lhs[j]) == 0) continue;
        }
        row_lhs[j] -= f * pivot_lhs[j];
      }
      for (std::size_t j = 0; j < m; ++j) {
        if constexpr (Ops::exact) {
          if (sgn(pivot_rhs[j]) == 0) continue;
        }
        row_rhs[j] -= f * pivot_rhs[j];
      }
    }
  }
  return rhs;
}

// --- SymMatrix ------------------------------------------------------------

template <class Scalar>
SymMatrix<Scalar> SymMatrix<Scalar>::from_dense(const DenseMatrix<Scalar>& dense) {
  if (dense.rows() != dense.cols()) throw std::invalid_argument("SymMatrix: matrix is not square");
  const std::size_t n = dense.rows();
  SymMatrix out(n);
  if constexpr (ScalarOps<Scalar>::exact) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        if (dense(i, j) != dense(j, i)) throw std::invalid_argument("SymMatrix: matrix is not symmetric");
        out(i, j) = dense(i, j);
      }
    }
  } else {
    const double scale = std::max(1.0, max_abs(dense));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        if (std::abs(dense(i, j) - dense(j, i)) > 1e-9 * scale) {
          throw std::invalid_argument("SymMatrix: matrix is not symmetric");
        }
        out(i, j) = 0.5 * (dense(i, j) + dense(j, i));
      }
    }
  }
  return out;
}

template <class Scalar>
DenseMatrix<Scalar> SymMatrix<Scalar>::to_dense() const {
  DenseMatrix<Scalar> dense(order_, order_);
  for (std::size_t i = 0; i < order_; ++i) {
    for (std::size_t j = 0; j < order_; ++j) dense(i, j) = (*this)(i, j);
  }
  return dense;
}

template <class Scalar>
bool SymMatrix<Scalar>::is_laplacian() const {
  using Ops = ScalarOps<Scalar>;
  Scalar scale(0);
  for (const auto& v : packed_) {
    Scalar a = Ops::abs(v);
    if (a > scale) scale = a;
  }
  for (std::size_t i = 0; i < order_; ++i) {
    Scalar row(0);
    for (std::size_t j = 0; j < order_; ++j) {
      if (i != j && (*this)(i, j) > Scalar(0)) return false;
      row += (*this)(i, j);
    }
    if constexpr (Ops::exact) {
      if (sgn(row) != 0) return false;
    } else {
      if (std::abs(row) > kSingularRelTol * std::max(1.0, scale)) return false;
    }
  }
  return true;
}

// --- Network --------------------------------------------------------------

template <class Scalar>
std::size_t Network<Scalar>::add_vertex(std::string label) {
  if (label.empty()) throw std::invalid_argument("vertex label must be non-empty");
  if (find(label)) throw std::invalid_argument("duplicate vertex label '" + label + "'");
  labels_.push_back(std::move(label));
  return labels_.size() - 1;
}

template <class Scalar>
void Network<Scalar>::add_edge(std::size_t u, std::size_t v, Scalar resistance) {
  if (u >= order() || v >= order()) throw std::invalid_argument("edge endpoint out of range");
  if (!(resistance > Scalar(0))) throw std::invalid_argument("edge resistance must be positive");
  edges_.push_back(Edge{u, v, std::move(resistance)});
}

template <class Scalar>
void Network<Scalar>::add_edge(std::string_view u, std::string_view v, Scalar resistance) {
  add_edge(index_of(u), index_of(v), std::move(resistance));
}

template <class Scalar>
std::optional<std::size_t> Network<Scalar>::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

template <class Scalar>
std::size_t Network<Scalar>::index_of(std::string_view label) const {
  if (auto idx = find(label)) return *idx;
  throw std::out_of_range("unknown vertex '" + std::string(label) + "'");
}

template <class Scalar>
bool Network<Scalar>::connected() const {
  const std::size_t n = order();
  if (n == 0) return false;
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (const auto& e : edges_) {
    if (e.is_loop()) continue;
    adjacency[e.u].push_back(e.v);
    adjacency[e.v].push_back(e.u);
  }
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    std::size_t x = frontier.front();
    frontier.pop();
    for (std::size_t y : adjacency[x]) {
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        frontier.push(y);
      }
    }
  }
  return reached == n;
}

FloatNetwork to_float(const ExactNetwork& net) {
  FloatNetwork out;
  for (const auto& label : net.labels()) out.add_vertex(label);
  for (const auto& e : net.edges()) out.add_edge(e.u, e.v, e.resistance.get_d());
  return out;
}

ExactNetwork build_prism(int n) {
  if (n < 1) throw std::invalid_argument("build_prism: n must be >= 1");
  ExactNetwork net;
  for (int i = 1; i <= n; ++i) net.add_vertex(prism_label('p', i));
  for (int i = 1; i <= n; ++i) net.add_vertex(prism_label('q', i));
  const auto p = [](int i) { return static_cast<std::size_t>(i - 1); };
  const auto q = [n](int i) { return static_cast<std::size_t>(n + i - 1); };
  const BigRat one(1);
  for (int i = 1; i <= n; ++i) net.add_edge(p(i), q(i), one);
  // Cycle edges p_i - p_{i+1 mod n}. For n = 2 both wrap to the same pair
  // (doubled sides); for n = 1 they become loops.
  for (int i = 1; i <= n; ++i) {
    const int next = i % n + 1;
    net.add_edge(p(i), p(next), one);
    net.add_edge(q(i), q(next), one);
  }
  return net;
}

ExactNetwork build_ladder(int n) {
  if (n < 1) throw std::invalid_argument("build_ladder: n must be >= 1");
  ExactNetwork net;
  for (int i = 1; i <= n; ++i) net.add_vertex(prism_label('p', i));
  for (int i = 1; i <= n; ++i) net.add_vertex(prism_label('q', i));
  const BigRat one(1);
  for (int i = 0; i < n; ++i) net.add_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(n + i), one);
  for (int i = 0; i + 1 < n; ++i) {
    net.add_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1), one);
    net.add_edge(static_cast<std::size_t>(n + i), static_cast<std::size_t>(n + i + 1), one);
  }
  return net;
}

// --- Laplacian machinery --------------------------------------------------

template <class Scalar>
SymMatrix<Scalar> laplacian(const Network<Scalar>& net) {
  SymMatrix<Scalar> lap(net.order());
  for (const auto& e : net.edges()) {
    if (e.is_loop()) continue;
    const Scalar g = ScalarOps<Scalar>::inverse(e.resistance);
    lap(e.u, e.u) += g;
    lap(e.v, e.v) += g;
    lap(e.u, e.v) -= g;
  }
  return lap;
}

template <class Scalar>
SymMatrix<Scalar> pinv_laplacian(const SymMatrix<Scalar>& lap) {
  const std::size_t n = lap.order();
  if (n == 0) throw DisconnectedNetwork("pinv_laplacian: empty matrix");
  const Scalar share = ScalarOps<Scalar>::inverse(Scalar(static_cast<long>(n)));
  DenseMatrix<Scalar> shifted = lap.to_dense();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) shifted(i, j) -= share;
  }
  DenseMatrix<Scalar> inv = invert_shifted(std::move(shifted), lap);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) += share;
  }
  return SymMatrix<Scalar>::from_dense(inv);
}

template <class Scalar>
PenroseResidual<Scalar> penrose_residual(const SymMatrix<Scalar>& lap, const SymMatrix<Scalar>& pinv) {
  const DenseMatrix<Scalar> l = lap.to_dense();
  const DenseMatrix<Scalar> lp = pinv.to_dense();
  // With both factors symmetric, P L = (L P^T)^T keeps the sparse L on the left.
  const DenseMatrix<Scalar> proj = multiply(l, lp);
  DenseMatrix<Scalar> reproduce = multiply(l, proj.transposed()).transposed();
  subtract_in_place(reproduce, l);
  DenseMatrix<Scalar> reflexive = multiply(proj.transposed(), lp);
  subtract_in_place(reflexive, lp);
  DenseMatrix<Scalar> ones(l.rows(), 1);
  for (std::size_t i = 0; i < l.rows(); ++i) ones(i, 0) = Scalar(1);
  return PenroseResidual<Scalar>{max_abs(reproduce), max_abs(reflexive), max_abs(multiply(lp, ones))};
}

template <class Scalar>
ResistanceOracle<Scalar>::ResistanceOracle(const Network<Scalar>& net) : lap_(laplacian(net)) {
  if (!net.connected()) throw DisconnectedNetwork();
  pinv_ = pinv_laplacian(lap_);
}

template <class Scalar>
Scalar ResistanceOracle<Scalar>::resistance(std::size_t u, std::size_t v) const {
  if (u >= pinv_.order() || v >= pinv_.order()) throw std::out_of_range("vertex index out of range");
  if (u == v) return Scalar(0);
  return pinv_(u, u) - 2 * pinv_(u, v) + pinv_(v, v);
}

template <class Scalar>
Scalar ResistanceOracle<Scalar>::kirchhoff() const {
  Scalar total(0);
  for (std::size_t u = 0; u < pinv_.order(); ++u) {
    for (std::size_t v = u + 1; v < pinv_.order(); ++v) total += resistance(u, v);
  }
  return total;
}

template <class Scalar>
Scalar ResistanceOracle<Scalar>::kirchhoff_from_trace() const {
  Scalar trace(0);
  for (std::size_t i = 0; i < pinv_.order(); ++i) trace += pinv_(i, i);
  return Scalar(static_cast<long>(pinv_.order())) * trace;
}

template <class Scalar>
Scalar resistance_oracle(const Network<Scalar>& net, std::size_t u, std::size_t v) {
  return ResistanceOracle<Scalar>(net).resistance(u, v);
}

template <class Scalar>
Scalar resistance_oracle(const Network<Scalar>& net, std::string_view u, std::string_view v) {
  return resistance_oracle(net, net.index_of(u), net.index_of(v));
}

template <class Scalar>
Scalar kirchhoff_oracle(const Network<Scalar>& net) {
  return ResistanceOracle<Scalar>(net).kirchhoff();
}

template <class Scalar>
BigInt matrix_tree_count(const Network<Scalar>& net) {
  const std::size_t n = net.order();
  if (n == 0) return BigInt(0);
  std::vector<std::vector<BigInt>> minor(n - 1, std::vector<BigInt>(n - 1, BigInt(0)));
  // Drop the last row and column.
  for (const auto& e : net.edges()) {
    if (e.is_loop()) continue;
    if (e.u < n - 1) minor[e.u][e.u] += 1;
    if (e.v < n - 1) minor[e.v][e.v] += 1;
    if (e.u < n - 1 && e.v < n - 1) {
      minor[e.u][e.v] -= 1;
      minor[e.v][e.u] -= 1;
    }
  }
  return bareiss_determinant(std::move(minor));
}

BigRat tree_weight_sum(const ExactNetwork& net) {
  const std::size_t n = net.order();
  if (n == 0) return BigRat(0);
  const SymMatrix<BigRat> lap = laplacian(net);
  DenseMatrix<BigRat> minor(n - 1, n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) minor(i, j) = lap(i, j);
  }
  return rational_determinant(std::move(minor));
}

// --- Kron reduction -------------------------------------------------------

TerminalSet::TerminalSet(std::vector<std::size_t> indices, std::size_t network_order)
    : indices_(std::move(indices)) {
  if (indices_.empty()) throw std::invalid_argument("terminal set must be non-empty");
  std::vector<bool> seen(network_order, false);
  for (std::size_t idx : indices_) {
    if (idx >= network_order) throw std::invalid_argument("terminal index out of range");
    if (seen[idx]) throw std::invalid_argument("duplicate terminal");
    seen[idx] = true;
  }
}

template <class Scalar>
SymMatrix<Scalar> schur_complement(const SymMatrix<Scalar>& lap, const TerminalSet& keep) {
  const std::size_t n = lap.order();
  std::vector<bool> kept(n, false);
  for (std::size_t idx : keep.indices()) {
    if (idx >= n) throw std::invalid_argument("terminal index out of range");
    kept[idx] = true;
  }
  std::vector<std::size_t> interior;
  for (std::size_t i = 0; i < n; ++i) {
    if (!kept[i]) interior.push_back(i);
  }
  const auto& terms = keep.indices();
  const std::size_t nk = terms.size();
  const std::size_t ni = interior.size();

  DenseMatrix<Scalar> result(nk, nk);
  for (std::size_t a = 0; a < nk; ++a) {
    for (std::size_t b = 0; b < nk; ++b) result(a, b) = lap(terms[a], terms[b]);
  }
  if (ni == 0) return SymMatrix<Scalar>::from_dense(result);

  DenseMatrix<Scalar> l_ii(ni, ni);
  DenseMatrix<Scalar> l_ik(ni, nk);
  for (std::size_t a = 0; a < ni; ++a) {
    for (std::size_t b = 0; b < ni; ++b) l_ii(a, b) = lap(interior[a], interior[b]);
    for (std::size_t b = 0; b < nk; ++b) l_ik(a, b) = lap(interior[a], terms[b]);
  }
  DenseMatrix<Scalar> x;
  try {
    x = solve(std::move(l_ii), l_ik);
  } catch (const std::domain_error&) {
    throw std::logic_error("schur_complement: interior block is singular");
  }
  subtract_in_place(result, multiply(l_ik.transposed(), x));
  return SymMatrix<Scalar>::from_dense(result);
}

template <class Scalar>
Network<Scalar> kron_reduce(const Network<Scalar>& net, const TerminalSet& keep) {
  if (!net.connected()) throw DisconnectedNetwork();
  const SymMatrix<Scalar> reduced = schur_complement(laplacian(net), keep);
  Network<Scalar> out;
  for (std::size_t idx : keep.indices()) out.add_vertex(net.labels()[idx]);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = a + 1; b < keep.size(); ++b) {
      const Scalar& entry = reduced(a, b);
      if constexpr (ScalarOps<Scalar>::exact) {
        if (sgn(entry) == 0) continue;
        if (sgn(entry) > 0) throw std::logic_error("kron_reduce: positive off-diagonal in Schur complement");
      } else {
        if (entry > -kDropTol) continue;
      }
      out.add_edge(a, b, ScalarOps<Scalar>::inverse(Scalar(-entry)));
    }
  }
  return out;
}

SymMatrix<BigRat> EightTerminalStencil::laplacian() const {
  enum : std::size_t { p1, p_prev, p_i, p_n, q1, q_prev, q_i, q_n };
  SymMatrix<BigRat> lap(8);
  const BigRat lower = lower_degree();
  const BigRat upper = upper_degree();
  for (std::size_t v : {p1, p_prev, q1, q_prev}) lap(v, v) = lower;
  for (std::size_t v : {p_i, p_n, q_i, q_n}) lap(v, v) = upper;
  // Unit joins between the two ladders.
  lap(p1, p_n) = lap(q1, q_n) = lap(p_prev, p_i) = lap(q_prev, q_i) = BigRat(-1);
  lap(p1, p_prev) = lap(q1, q_prev) = -lower_side;
  lap(p1, q1) = lap(p_prev, q_prev) = -lower_rung;
  lap(p1, q_prev) = lap(p_prev, q1) = -lower_diagonal;
  lap(p_i, p_n) = lap(q_i, q_n) = -upper_side;
  lap(p_i, q_i) = lap(p_n, q_n) = -upper_rung;
  lap(p_i, q_n) = lap(p_n, q_i) = -upper_diagonal;
  return lap;
}

std::vector<double> symmetric_eigenvalues(const SymMatrix<double>& matrix) {
  const auto n = static_cast<Eigen::Index>(matrix.order());
  Eigen::MatrixXd dense(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      dense(i, j) = matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver did not converge");
  std::vector<double> values(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  std::sort(values.begin(), values.end());
  return values;
}

// --- Instantiations -------------------------------------------------------

#define PRISMRES_INSTANTIATE(S)                                                                   \
  template class DenseMatrix<S>;                                                                  \
  template class SymMatrix<S>;                                                                    \
  template class Network<S>;                                                                      \
  template class ResistanceOracle<S>;                                                             \
  template DenseMatrix<S> multiply(const DenseMatrix<S>&, const DenseMatrix<S>&);                 \
  template DenseMatrix<S> solve(DenseMatrix<S>, DenseMatrix<S>);                                  \
  template SymMatrix<S> laplacian(const Network<S>&);                                             \
  template SymMatrix<S> pinv_laplacian(const SymMatrix<S>&);                                      \
  template PenroseResidual<S> penrose_residual(const SymMatrix<S>&, const SymMatrix<S>&);         \
  template S resistance_oracle(const Network<S>&, std::size_t, std::size_t);                      \
  template S resistance_oracle(const Network<S>&, std::string_view, std::string_view);            \
  template S kirchhoff_oracle(const Network<S>&);                                                 \
  template BigInt matrix_tree_count(const Network<S>&);                                           \
  template SymMatrix<S> schur_complement(const SymMatrix<S>&, const TerminalSet&);                \
  template Network<S> kron_reduce(const Network<S>&, const TerminalSet&);

PRISMRES_INSTANTIATE(double)
PRISMRES_INSTANTIATE(BigRat)

#undef PRISMRES_INSTANTIATE

}  // namespace prismres
