#pragma once

// Exact scalars: GMP-backed rationals and the quadratic field Q(sqrt 3).

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace prismres {

using BigInt = mpz_class;
using BigRat = mpq_class;

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parses "p/q", an integer, or a decimal literal ("-0.125", "2.5e-3") into a
/// canonical rational. Throws std::invalid_argument on malformed input.
BigRat parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const BigRat& value);

double to_double(const BigRat& value);

/// True iff den > 0 and gcd(|num|, den) = 1.
bool is_canonical(const BigRat& value);

/// The real number a + b*sqrt(3) with rational a and b.
///
/// Equality is component-wise, which is sound because sqrt(3) is irrational.
class QS3 {
 public:
  QS3() = default;
  QS3(BigRat rational, BigRat sqrt3 = 0);  // NOLINT(google-explicit-constructor)

  template <class Int, std::enable_if_t<std::is_integral_v<Int>, int> = 0>
  QS3(Int value) : a_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)

  const BigRat& rational_part() const { return a_; }
  const BigRat& sqrt3_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  /// a - b*sqrt(3).
  QS3 conjugate() const;
  /// Field norm a^2 - 3b^2; zero only for the zero element.
  BigRat norm() const;
  /// Sign of the real value: -1, 0 or +1, decided exactly.
  int sign() const;

  /// The rational value; throws std::logic_error if the sqrt(3) part is nonzero.
  BigRat as_rational() const;
  double to_double() const;

  QS3& operator+=(const QS3& rhs);
  QS3& operator-=(const QS3& rhs);
  QS3& operator*=(const QS3& rhs);
  /// Throws DivisionByZero when rhs is zero.
  QS3& operator/=(const QS3& rhs);

  friend QS3 operator+(QS3 lhs, const QS3& rhs) { return lhs += rhs; }
  friend QS3 operator-(QS3 lhs, const QS3& rhs) { return lhs -= rhs; }
  friend QS3 operator*(QS3 lhs, const QS3& rhs) { return lhs *= rhs; }
  friend QS3 operator/(QS3 lhs, const QS3& rhs) { return lhs /= rhs; }
  QS3 operator-() const;

  friend bool operator==(const QS3& lhs, const QS3& rhs) {
    return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_;
  }
  friend bool operator!=(const QS3& lhs, const QS3& rhs) { return !(lhs == rhs); }

 private:
  BigRat a_{0};
  BigRat b_{0};
};

const QS3& sqrt3();

QS3 inverse(const QS3& value);
QS3 pow(QS3 base, unsigned exponent);

/// (2 - sqrt 3)^k by binary exponentiation.
QS3 pow_2_minus_sqrt3(unsigned k);

/// Renders as "a/b + c/d*sqrt3", dropping a zero term ("0" for zero).
std::string to_string(const QS3& value);
/// Inverse of to_string. Throws std::invalid_argument on malformed input.
QS3 parse_qs3(std::string_view text);

}  // namespace prismres
