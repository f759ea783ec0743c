#include "prismres/genfib.hpp"

#include <cmath>
#include <mutex>
#include <string>

namespace prismres {

namespace {

void require_non_negative(int n, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + ": n must be >= 0, got " + std::to_string(n));
}

}  // namespace

GenFibCache::GenFibCache() : values_{BigInt(0), BigInt(1)} {}

BigInt GenFibCache::at(int k) {
  require_non_negative(k, "GenFibCache::at");
  const auto index = static_cast<std::size_t>(k);
  {
    std::shared_lock lock(mutex_);
    if (index < values_.size()) return values_[index];
  }
  std::unique_lock lock(mutex_);
  values_.reserve(index + 1);
  while (values_.size() <= index) {
    const std::size_t m = values_.size();
    values_.emplace_back(4 * values_[m - 1] - values_[m - 2]);
  }
  return values_[index];
}

std::size_t GenFibCache::cached() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

GenFibCache& shared_gfib_cache() {
  static GenFibCache cache;
  return cache;
}

BigInt gfib(int n) { return shared_gfib_cache().at(n); }

QS3 gfib_closed(int n) {
  require_non_negative(n, "gfib_closed");
  const QS3 x_n = pow_2_minus_sqrt3(static_cast<unsigned>(n));
  // (2-sqrt3)^-n is the conjugate (2+sqrt3)^n.
  return (x_n.conjugate() - x_n) / (QS3(2) * sqrt3());
}

bool g_identity_holds(int n) {
  require_non_negative(n, "g_identity_holds");
  const QS3 x(2, -1);
  const QS3 denom = QS3(BigRat(gfib(n + 1))) - x * QS3(BigRat(gfib(n)));
  return pow_2_minus_sqrt3(static_cast<unsigned>(n)) * denom == QS3(1);
}

BigInt spanning_trees_prism(int n) {
  if (n < 1) throw std::invalid_argument("spanning_trees_prism: n must be >= 1");
  const BigRat ratio(gfib(2 * n), gfib(n));
  BigRat count = BigRat(n, 2) * (ratio - 2);
  count.canonicalize();
  if (count.get_den() != 1) {
    throw std::logic_error("spanning_trees_prism: non-integer count " + count.get_str() +
                           " for n = " + std::to_string(n));
  }
  return count.get_num();
}

double spanning_trees_prism_float(int n) {
  if (n < 1) throw std::invalid_argument("spanning_trees_prism_float: n must be >= 1");
  const double r3 = std::sqrt(3.0);
  return 0.5 * n * (std::pow(2.0 + r3, n) + std::pow(2.0 - r3, n) - 2.0);
}

}  // namespace prismres
