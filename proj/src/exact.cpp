#include "prismres/exact.hpp"

#include <cctype>
#include <cmath>
#include <regex>

namespace prismres {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) {
    throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
  }
  BigInt value(std::string(text), 10);
  return negative ? BigInt(-value) : value;
}

BigInt pow10(unsigned long exponent) {
  BigInt result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

BigRat parse_decimal(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    BigInt parsed = parse_integer(exp_text);
    if (!parsed.fits_slong_p() || std::abs(parsed.get_si()) > 100000) {
      throw std::invalid_argument("decimal exponent out of range");
    }
    exponent = parsed.get_si();
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(text)) {
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    }
    digits = std::string(text);
  }
  BigRat value{BigInt(digits, 10)};
  if (exponent > 0) {
    value *= BigRat(pow10(static_cast<unsigned long>(exponent)));
  } else if (exponent < 0) {
    value /= BigRat(pow10(static_cast<unsigned long>(-exponent)));
  }
  value.canonicalize();
  return negative ? BigRat(-value) : value;
}

const std::regex& qs3_pattern() {
  // [rational] [(+|-) rational*sqrt3], or a lone signed rational*sqrt3.
  static const std::regex pattern(
      R"(^\s*(?:(-?\d+(?:/\d+)?)\s*(?:([+-])\s*(\d+(?:/\d+)?)\s*\*\s*sqrt3)?|(-?\d+(?:/\d+)?)\s*\*\s*sqrt3)\s*$)");
  return pattern;
}

}  // namespace

BigRat parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(trim(text.substr(0, slash)));
    BigInt den = parse_integer(trim(text.substr(slash + 1)));
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    BigRat value(num, den);
    value.canonicalize();
    return value;
  }
  return parse_decimal(text);
}

std::string to_string(const BigRat& value) { return value.get_str(); }

double to_double(const BigRat& value) {
  // get_d truncates; step to the neighbour when it is nearer.
  const double down = value.get_d();
  if (!std::isfinite(down) || sgn(value) == 0) return down;
  const double up = std::nextafter(down, sgn(value) > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(up)) return down;
  const BigRat err_down = abs(BigRat(value - BigRat(down)));
  const BigRat err_up = abs(BigRat(value - BigRat(up)));
  const int c = cmp(err_down, err_up);
  if (c != 0) return c < 0 ? down : up;
  int exp = 0;
  const double mantissa = std::frexp(down, &exp);
  return std::fmod(std::ldexp(mantissa, 53), 2.0) == 0.0 ? down : up;
}

bool is_canonical(const BigRat& value) {
  if (sgn(value.get_den()) <= 0) return false;
  BigInt g;
  BigInt num = abs(value.get_num());
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), value.get_den_mpz_t());
  return g == 1;
}

QS3::QS3(BigRat rational, BigRat sqrt3) : a_(std::move(rational)), b_(std::move(sqrt3)) {
  a_.canonicalize();
  b_.canonicalize();
}

QS3 QS3::conjugate() const { return QS3(a_, -b_); }

BigRat QS3::norm() const { return BigRat(a_ * a_ - 3 * b_ * b_); }

int QS3::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: the larger of a^2 and 3b^2 wins.
  int cmp_ab = cmp(BigRat(a_ * a_), BigRat(3 * b_ * b_));
  return cmp_ab > 0 ? sa : sb;
}

BigRat QS3::as_rational() const {
  if (!is_rational()) {
    throw std::logic_error("expected a rational value, got " + to_string(*this));
  }
  return a_;
}

double QS3::to_double() const { return prismres::to_double(a_) + prismres::to_double(b_) * std::sqrt(3.0); }

QS3& QS3::operator+=(const QS3& rhs) {
  a_ += rhs.a_;
  b_ += rhs.b_;
  return *this;
}

QS3& QS3::operator-=(const QS3& rhs) {
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  return *this;
}

QS3& QS3::operator*=(const QS3& rhs) {
  BigRat a = a_ * rhs.a_ + 3 * b_ * rhs.b_;
  BigRat b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QS3& QS3::operator/=(const QS3& rhs) {
  if (rhs.is_zero()) throw DivisionByZero("division by zero in Q(sqrt3)");
  BigRat n = rhs.norm();
  *this *= rhs.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

QS3 QS3::operator-() const { return QS3(-a_, -b_); }

const QS3& sqrt3() {
  static const QS3 root(0, 1);
  return root;
}

QS3 inverse(const QS3& value) { return QS3(1) / value; }

QS3 pow(QS3 base, unsigned exponent) {
  QS3 result(1);
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

QS3 pow_2_minus_sqrt3(unsigned k) { return pow(QS3(2, -1), k); }

std::string to_string(const QS3& value) {
  const BigRat& a = value.rational_part();
  const BigRat& b = value.sqrt3_part();
  if (sgn(b) == 0) return a.get_str();
  if (sgn(a) == 0) return b.get_str() + "*sqrt3";
  BigRat mag = abs(b);
  return a.get_str() + (sgn(b) < 0 ? " - " : " + ") + mag.get_str() + "*sqrt3";
}

QS3 parse_qs3(std::string_view text) {
  std::string owned(text);
  std::smatch match;
  if (!std::regex_match(owned, match, qs3_pattern())) {
    throw std::invalid_argument("malformed Q(sqrt3) value '" + owned + "'");
  }
  if (match[4].matched) return QS3(0, parse_rational(match[4].str()));
  BigRat a = parse_rational(match[1].str());
  if (!match[3].matched) return QS3(a);
  BigRat b = parse_rational(match[3].str());
  if (match[2].str() == "-") b = -b;
  return QS3(a, b);
}

}  // namespace prismres
