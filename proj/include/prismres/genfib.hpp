#pragma once

// The integer sequence G_{k+2} = 4 G_{k+1} - G_k with G_0 = 0, G_1 = 1, and
// the prism spanning-tree count built on it.

#include "prismres/exact.hpp"

#include <shared_mutex>
#include <vector>

namespace prismres {

/// Memoized G_k values. Readers share the lock; extension takes it exclusively.
class GenFibCache {
 public:
  GenFibCache();

  BigInt at(int k);
  std::size_t cached() const;

 private:
  mutable std::shared_mutex mutex_;
  std::vector<BigInt> values_;
};

GenFibCache& shared_gfib_cache();

/// G_n from the recurrence (cached). Throws std::invalid_argument for n < 0.
BigInt gfib(int n);

/// ((2-sqrt3)^-n - (2-sqrt3)^n) / (2 sqrt3), evaluated exactly. Equals gfib(n).
QS3 gfib_closed(int n);

/// True iff (2-sqrt3)^n * (G_{n+1} - (2-sqrt3) G_n) == 1 exactly.
bool g_identity_holds(int n);

/// (n/2)(G_{2n}/G_n - 2) in exact arithmetic. Throws std::logic_error if the
/// value is not an integer.
BigInt spanning_trees_prism(int n);

/// (n/2)((2+sqrt3)^n + (2-sqrt3)^n - 2) in binary64; display only, overflows
/// to +inf from n = 535.
double spanning_trees_prism_float(int n);

}  // namespace prismres
