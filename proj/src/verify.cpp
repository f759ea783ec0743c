#include "prismres/cli.hpp"

#include "prismres/exact.hpp"
#include "prismres/genfib.hpp"
#include "prismres/ladder.hpp"
#include "prismres/network.hpp"
#include "prismres/prism.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace prismres::cli {

namespace {

class Check {
 public:
  explicit Check(std::string name) { result_.name = std::move(name); }

  /// Records one case; `describe` is only called for the first failure.
  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++result_.cases;
    if (!ok && result_.passed) {
      result_.passed = false;
      result_.counterexample = describe();
    }
  }

  CheckResult take() { return std::move(result_); }

 private:
  CheckResult result_;
};

bool close_rel(double actual, double expected, double tol) {
  return std::abs(actual - expected) <= tol * std::max(1.0, std::abs(expected));
}

std::string where(int n, int i = 0) {
  std::ostringstream s;
  s << "n=" << n;
  if (i > 0) s << " i=" << i;
  return s.str();
}

const char* kind_name(PairKind kind) { return kind == PairKind::SameSide ? "same-side" : "cross"; }

PrismVertex vertex_at(int n, std::size_t k) {
  const int idx = static_cast<int>(k);
  return idx < n ? PrismVertex{Side::P, idx + 1} : PrismVertex{Side::Q, idx - n + 1};
}

}  // namespace

VerifyReport run_verification(int n_max, double tol) {
  Check oracle_exact("oracle-agreement-exact");
  Check oracle_float("oracle-agreement-float");
  Check rational("rationality");
  Check route("route-agreement");
  Check pair_sum("pair-sum");
  Check kirchhoff("kirchhoff-routes");
  Check foster("foster");
  Check trig("trig-identities");
  Check trees("spanning-trees");
  Check genfib("genfib-identities");
  Check ladder("ladder-corners");
  Check kron("kron-stencil");
  Check spectrum("spectrum");

  for (int n = 1; n <= n_max; ++n) {
    const ExactNetwork prism = build_prism(n);
    const ResistanceOracle<BigRat> exact_oracle(prism);
    const ResistanceOracle<double> float_oracle(to_float(prism));
    const std::size_t order = prism.order();

    for (std::size_t a = 0; a < order; ++a) {
      for (std::size_t b = a + 1; b < order; ++b) {
        const PrismVertex u = vertex_at(n, a);
        const PrismVertex v = vertex_at(n, b);
        const BigRat closed = prism_resistance_exact(n, u, v);
        const BigRat oracle = exact_oracle.resistance(a, b);
        oracle_exact.expect(closed == oracle, [&] {
          return where(n) + " " + u.label() + "-" + v.label() + ": closed " + to_string(closed) + " vs oracle " +
                 to_string(oracle);
        });
        const double closed_f = prism_resistance_float(n, u, v);
        const double oracle_f = float_oracle.resistance(a, b);
        oracle_float.expect(std::abs(closed_f - oracle_f) <= tol, [&] {
          std::ostringstream s;
          s.precision(17);
          s << where(n) << " " << u.label() << "-" << v.label() << ": closed " << closed_f << " vs oracle "
            << oracle_f;
          return s.str();
        });
      }
    }

    BigRat pair_total(0);
    for (int i = 1; i <= n; ++i) {
      for (PairKind kind : {PairKind::SameSide, PairKind::CrossSide}) {
        const QS3 value = resistance_base_qs3(n, i, kind);
        rational.expect(value.is_rational(),
                        [&] { return where(n, i) + " " + kind_name(kind) + ": " + to_string(value); });
        if (i >= 2) {
          const BigRat composed = resistance_via_reduction(n, i, kind);
          const BigRat base = resistance_base_exact(n, i, kind);
          route.expect(composed == base, [&] {
            return where(n, i) + " " + kind_name(kind) + ": composed " + to_string(composed) + " vs closed " +
                   to_string(base);
          });
        }
      }
      const BigRat sum = resistance_base_exact(n, i, PairKind::SameSide) +
                         resistance_base_exact(n, i, PairKind::CrossSide);
      pair_total += sum;
      const BigRat closed_sum = prism_pair_sum(n, i);
      pair_sum.expect(sum == closed_sum, [&] {
        return where(n, i) + ": " + to_string(sum) + " vs " + to_string(closed_sum);
      });
      pair_sum.expect(close_rel(prism_pair_sum_float(n, i), to_double(closed_sum), tol),
                      [&] { return where(n, i) + ": float pair sum off"; });
    }

    const BigRat kf = kirchhoff_closed(n);
    kirchhoff.expect(kf == BigRat(n * pair_total), [&] { return where(n) + ": closed vs pair-sum route"; });
    kirchhoff.expect(kf == exact_oracle.kirchhoff(), [&] { return where(n) + ": closed vs exact oracle"; });
    kirchhoff.expect(exact_oracle.kirchhoff() == exact_oracle.kirchhoff_from_trace(),
                     [&] { return where(n) + ": oracle pair sum vs N*trace"; });
    for (auto [route_id, route_name] : {std::pair{KirchhoffRoute::Closed, "closed"},
                                        std::pair{KirchhoffRoute::Coth, "coth"},
                                        std::pair{KirchhoffRoute::Spectral, "spectral"}}) {
      const double value = kirchhoff_float(n, route_id);
      kirchhoff.expect(close_rel(value, to_double(kf), tol), [&] {
        std::ostringstream s;
        s.precision(17);
        s << where(n) << ": " << route_name << " route " << value << " vs " << to_double(kf);
        return s.str();
      });
    }

    BigRat edge_sum(0);
    for (const auto& e : prism.edges()) edge_sum += exact_oracle.resistance(e.u, e.v);
    foster.expect(edge_sum == BigRat(2 * n - 1), [&] { return where(n) + ": edge sum " + to_string(edge_sum); });

    const BigRat trig_closed = trig_sum_closed(n);
    trig.expect(close_rel(trig_sum_direct(n), to_double(trig_closed), tol),
                [&] { return where(n) + ": direct trig sum vs " + to_string(trig_closed); });
    if (n >= 2) trig.expect(csc2_sum_check(n, tol), [&] { return where(n) + ": csc^2 sum"; });
    trig.expect(close_rel(kirchhoff_trig_split(n), to_double(kf), tol),
                [&] { return where(n) + ": trig split of the Kirchhoff index"; });

    const BigInt prism_trees = spanning_trees_prism(n);
    const BigInt prism_det = matrix_tree_count(prism);
    trees.expect(prism_trees == prism_det, [&] {
      return where(n) + ": formula " + prism_trees.get_str() + " vs determinant " + prism_det.get_str();
    });
    const ExactNetwork ladder_net = build_ladder(n);
    trees.expect(gfib(n) == matrix_tree_count(ladder_net), [&] { return where(n) + ": G_n vs ladder trees"; });

    genfib.expect(gfib_closed(n) == QS3(BigRat(gfib(n))), [&] { return where(n) + ": closed form"; });
    genfib.expect(g_identity_holds(n), [&] { return where(n) + ": g_n identity"; });

    const ResistanceOracle<BigRat> ladder_oracle(ladder_net);
    const CornerResistances corners = ladder_corner_resistances(n);
    const std::size_t p1 = 0;
    const std::size_t pn = static_cast<std::size_t>(n - 1);
    const std::size_t q1 = static_cast<std::size_t>(n);
    const std::size_t qn = static_cast<std::size_t>(2 * n - 1);
    ladder.expect(corners.rung == QS3(ladder_oracle.resistance(pn, qn)) &&
                      corners.rung == QS3(ladder_oracle.resistance(p1, q1)),
                  [&] { return where(n) + ": rung corner"; });
    ladder.expect(corners.side == QS3(ladder_oracle.resistance(pn, p1)) &&
                      corners.side == QS3(ladder_oracle.resistance(qn, q1)),
                  [&] { return where(n) + ": side corner"; });
    ladder.expect(corners.diagonal == QS3(ladder_oracle.resistance(pn, q1)) &&
                      corners.diagonal == QS3(ladder_oracle.resistance(qn, p1)),
                  [&] { return where(n) + ": diagonal corner"; });
    if (n >= 2) {
      const TerminalSet ends({pn, qn, p1, q1}, ladder_net.order());
      ladder.expect(schur_complement(laplacian(ladder_net), ends) == corner_laplacian(ladder_delta_edges(n)),
                    [&] { return where(n) + ": reduced ladder vs delta edges"; });
    }

    for (int i = 3; i <= n - 1; ++i) {
      const auto p = [](int k) { return static_cast<std::size_t>(k - 1); };
      const auto q = [n](int k) { return static_cast<std::size_t>(n + k - 1); };
      const TerminalSet keep({p(1), p(i - 1), p(i), p(n), q(1), q(i - 1), q(i), q(n)}, order);
      const ExactNetwork reduced = kron_reduce(prism, keep);
      const DeltaEdges lower = ladder_delta_edges(i - 1);
      const DeltaEdges upper = ladder_delta_edges(n - i + 1);
      const EightTerminalStencil stencil{upper.side.as_rational(),  upper.rung.as_rational(),
                                         upper.diagonal.as_rational(), lower.side.as_rational(),
                                         lower.rung.as_rational(),  lower.diagonal.as_rational()};
      kron.expect(laplacian(reduced) == stencil.laplacian(), [&] { return where(n, i) + ": stencil mismatch"; });
      const ResistanceOracle<BigRat> reduced_oracle(reduced);
      for (std::size_t a = 0; a < 8; ++a) {
        for (std::size_t b = a + 1; b < 8; ++b) {
          kron.expect(reduced_oracle.resistance(a, b) ==
                          exact_oracle.resistance(keep.indices()[a], keep.indices()[b]),
                      [&] { return where(n, i) + ": terminal resistance changed by reduction"; });
        }
      }
    }

    PrismSpectrum analytic = prism_eigenvalues(n);
    std::sort(analytic.eigenvalues.begin(), analytic.eigenvalues.end());
    const std::vector<double> numeric = symmetric_eigenvalues(float_oracle.laplacian_matrix());
    double worst = 0.0;
    for (std::size_t k = 0; k < numeric.size(); ++k) {
      worst = std::max(worst, std::abs(numeric[k] - analytic.eigenvalues[k]));
    }
    spectrum.expect(worst <= tol, [&] {
      std::ostringstream s;
      s << where(n) << ": max eigenvalue deviation " << worst;
      return s.str();
    });
  }

  VerifyReport report;
  for (Check* check : {&oracle_exact, &oracle_float, &rational, &route, &pair_sum, &kirchhoff, &foster, &trig,
                       &trees, &genfib, &ladder, &kron, &spectrum}) {
    report.checks.push_back(check->take());
  }
  return report;
}

}  // namespace prismres::cli
