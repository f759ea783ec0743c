#pragma once

// Resistance networks and the Laplacian-pseudoinverse oracle.
//
// Everything here is templated on the scalar: BigRat for exact mode, double
// for float mode. Both are explicitly instantiated in network.cpp.

#include "prismres/exact.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prismres {

class DisconnectedNetwork : public std::runtime_error {
 public:
  DisconnectedNetwork() : std::runtime_error("network is disconnected") {}
  using std::runtime_error::runtime_error;
};

/// Row-major dense matrix; the workhorse behind elimination and products.
template <class Scalar>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

  static DenseMatrix identity(std::size_t order);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix transposed() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

template <class Scalar>
DenseMatrix<Scalar> multiply(const DenseMatrix<Scalar>& lhs, const DenseMatrix<Scalar>& rhs);

/// Solves lhs * X = rhs by Gauss-Jordan elimination with partial pivoting.
/// Exact mode pivots on the largest float shadow among nonzero candidates;
/// float mode declares singularity below 1e-12 * max|entry|. Throws
/// std::domain_error when singular.
template <class Scalar>
DenseMatrix<Scalar> solve(DenseMatrix<Scalar> lhs, DenseMatrix<Scalar> rhs);

/// Dense symmetric matrix storing the lower triangle only.
template <class Scalar>
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t order) : order_(order), packed_(order * (order + 1) / 2, Scalar(0)) {}

  /// Exact mode requires exact symmetry; float mode accepts asymmetry up to
  /// 1e-9 relative and stores the average. Throws std::invalid_argument.
  static SymMatrix from_dense(const DenseMatrix<Scalar>& dense);

  std::size_t order() const { return order_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return packed_[slot(i, j)]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return packed_[slot(i, j)]; }

  DenseMatrix<Scalar> to_dense() const;

  /// Zero row sums (exact, or within 1e-12 * max|entry| in float mode) and
  /// non-positive off-diagonals.
  bool is_laplacian() const;

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  static std::size_t slot(std::size_t i, std::size_t j) {
    return i >= j ? i * (i + 1) / 2 + j : j * (j + 1) / 2 + i;
  }

  std::size_t order_ = 0;
  std::vector<Scalar> packed_;
};

/// Weighted multigraph with positive edge resistances. Parallel edges and
/// self-loops are allowed; loops never reach the Laplacian.
template <class Scalar>
class Network {
 public:
  struct Edge {
    std::size_t u;
    std::size_t v;
    Scalar resistance;

    bool is_loop() const { return u == v; }
  };

  /// Throws std::invalid_argument on an empty or duplicate label.
  std::size_t add_vertex(std::string label);
  /// Throws std::invalid_argument on a bad index or non-positive resistance.
  void add_edge(std::size_t u, std::size_t v, Scalar resistance);
  void add_edge(std::string_view u, std::string_view v, Scalar resistance);

  std::optional<std::size_t> find(std::string_view label) const;
  /// Throws std::out_of_range for an unknown label.
  std::size_t index_of(std::string_view label) const;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t order() const { return labels_.size(); }

  /// Connectivity of the loop-free support graph; false for an empty network.
  bool connected() const;

 private:
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
};

using ExactNetwork = Network<BigRat>;
using FloatNetwork = Network<double>;

FloatNetwork to_float(const ExactNetwork& net);

/// Y_n with unit resistances, labels p1..pn then q1..qn. Y_2 has doubled
/// side edges and Y_1 carries one loop at each vertex, so there are always
/// 3n edges. Throws std::invalid_argument for n < 1.
ExactNetwork build_prism(int n);

/// L_n: the prism without its two wrap-around edges; 3n - 2 unit edges.
ExactNetwork build_ladder(int n);

template <class Scalar>
SymMatrix<Scalar> laplacian(const Network<Scalar>& net);

/// Moore-Penrose pseudoinverse (L - J/N)^-1 + J/N of a connected Laplacian,
/// J the all-ones matrix. Throws DisconnectedNetwork when L - J/N is singular.
template <class Scalar>
SymMatrix<Scalar> pinv_laplacian(const SymMatrix<Scalar>& lap);

template <class Scalar>
struct PenroseResidual {
  Scalar reproduce;  ///< max |L L+ L - L|
  Scalar reflexive;  ///< max |L+ L L+ - L+|
  Scalar kernel;     ///< max |(L+ 1)_i|
};

template <class Scalar>
PenroseResidual<Scalar> penrose_residual(const SymMatrix<Scalar>& lap, const SymMatrix<Scalar>& pinv);

/// Effective resistances from a single pseudoinverse: r(u,v) = l+_uu - 2 l+_uv + l+_vv.
template <class Scalar>
class ResistanceOracle {
 public:
  /// Throws DisconnectedNetwork.
  explicit ResistanceOracle(const Network<Scalar>& net);

  Scalar resistance(std::size_t u, std::size_t v) const;
  /// Half the sum of r over all ordered vertex pairs.
  Scalar kirchhoff() const;
  /// N * trace(L+); equals kirchhoff().
  Scalar kirchhoff_from_trace() const;

  const SymMatrix<Scalar>& pinv() const { return pinv_; }
  const SymMatrix<Scalar>& laplacian_matrix() const { return lap_; }

 private:
  SymMatrix<Scalar> lap_;
  SymMatrix<Scalar> pinv_;
};

template <class Scalar>
Scalar resistance_oracle(const Network<Scalar>& net, std::size_t u, std::size_t v);

template <class Scalar>
Scalar resistance_oracle(const Network<Scalar>& net, std::string_view u, std::string_view v);

template <class Scalar>
Scalar kirchhoff_oracle(const Network<Scalar>& net);

/// Spanning trees of the underlying multigraph (resistances ignored, loops
/// dropped), as a fraction-free determinant of a Laplacian minor. Zero when
/// disconnected.
template <class Scalar>
BigInt matrix_tree_count(const Network<Scalar>& net);

/// Sum over spanning trees of the product of edge conductances.
BigRat tree_weight_sum(const ExactNetwork& net);

/// Ordered, duplicate-free vertex indices into a network.
class TerminalSet {
 public:
  /// Throws std::invalid_argument when empty, duplicated, or out of range.
  TerminalSet(std::vector<std::size_t> indices, std::size_t network_order);

  template <class Scalar>
  static TerminalSet from_labels(const Network<Scalar>& net, const std::vector<std::string>& labels) {
    std::vector<std::size_t> indices;
    indices.reserve(labels.size());
    for (const auto& label : labels) indices.push_back(net.index_of(label));
    return TerminalSet(std::move(indices), net.order());
  }

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }

 private:
  std::vector<std::size_t> indices_;
};

/// L_kk - L_ki L_ii^-1 L_ik, rows and columns in terminal order.
template <class Scalar>
SymMatrix<Scalar> schur_complement(const SymMatrix<Scalar>& lap, const TerminalSet& keep);

/// Kron reduction onto the terminals. Each negative off-diagonal of the Schur
/// complement becomes an edge of conductance -entry; zero entries (below
/// 1e-12 in float mode) are open circuits and produce no edge.
template <class Scalar>
Network<Scalar> kron_reduce(const Network<Scalar>& net, const TerminalSet& keep);

/// The 8-vertex reduction of Y_n split into the ladders on rungs 1..i-1
/// ("lower") and i..n ("upper"), joined by four unit edges. Values are
/// conductances of the reduced ladder edges, so an open diagonal is 0.
///
/// Vertex order: p1, p_{i-1}, p_i, p_n, q1, q_{i-1}, q_i, q_n.
struct EightTerminalStencil {
  BigRat upper_side;      // p_i-p_n, q_i-q_n
  BigRat upper_rung;      // p_i-q_i, p_n-q_n
  BigRat upper_diagonal;  // p_i-q_n, p_n-q_i
  BigRat lower_side;      // p1-p_{i-1}, q1-q_{i-1}
  BigRat lower_rung;      // p1-q1, p_{i-1}-q_{i-1}
  BigRat lower_diagonal;  // p1-q_{i-1}, p_{i-1}-q1

  /// Diagonal entry for p1, p_{i-1}, q1, q_{i-1}.
  BigRat lower_degree() const { return BigRat(1 + lower_side + lower_rung + lower_diagonal); }
  /// Diagonal entry for p_i, p_n, q_i, q_n.
  BigRat upper_degree() const { return BigRat(1 + upper_side + upper_rung + upper_diagonal); }

  SymMatrix<BigRat> laplacian() const;
};

/// Sorted eigenvalues of a symmetric float matrix.
std::vector<double> symmetric_eigenvalues(const SymMatrix<double>& matrix);

}  // namespace prismres
