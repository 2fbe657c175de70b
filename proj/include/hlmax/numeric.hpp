#pragma once

// Scalars shared by every module: exact rationals (GMP), log-domain
// accumulation, and Quantity, a nonnegative magnitude that always carries its
// natural log and, when it was computed without rounding, the exact value.

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <compare>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "hlmax/error.hpp"

namespace hlmax {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

/// Natural log of a nonnegative integer; works far beyond double range.
inline double log_of(const Integer& z) {
  if (z <= 0) return kLogZero;
  long exp2 = 0;
  const double mantissa = mpz_get_d_2exp(&exp2, z.backend().data());
  return std::log(mantissa) + static_cast<double>(exp2) * std::numbers::ln2;
}

inline double log_of(const Rational& q) {
  if (q <= 0) return kLogZero;
  return log_of(Integer(boost::multiprecision::numerator(q))) -
         log_of(Integer(boost::multiprecision::denominator(q)));
}

/// 2^e for any integer e, exactly.
inline Rational pow2(long e) {
  Integer one = 1;
  if (e >= 0) return Rational(Integer(one << static_cast<unsigned>(e)));
  return Rational(one, Integer(one << static_cast<unsigned>(-e)));
}

inline Rational pow_int(long base, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.backend().data(), static_cast<unsigned long>(base), e);
  return Rational(r);
}

/// Parses a plain decimal literal ("12", "-0.5", "3.25e-4") into an exact rational.
inline Rational parse_decimal(std::string_view text) {
  auto fail = [&] { throw Error(ErrorCode::ParseError, "not a decimal number: '" + std::string(text) + "'"); };
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t end = text.size();
  while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  bool negative = false;
  if (i < end && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  std::string digits;
  long frac_len = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < end; ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_len;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) fail();
  long exponent = 0;
  if (i < end && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    std::string exp_text(text.substr(i, end - i));
    if (exp_text.empty()) fail();
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      fail();
    }
    if (used != exp_text.size()) fail();
    i = end;
  }
  if (i != end) fail();
  // a leading zero would make GMP read the digits as octal
  const auto nz = digits.find_first_not_of('0');
  const Integer numerator(nz == std::string::npos ? std::string("0") : digits.substr(nz));
  const long shift = exponent - frac_len;
  Rational value(numerator);
  if (shift > 0) value *= pow_int(10, static_cast<unsigned long>(shift));
  if (shift < 0) value /= pow_int(10, static_cast<unsigned long>(-shift));
  return negative ? Rational(-value) : value;
}

/// log(e^a + e^b) without overflow.
inline double log_add(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

/// log|e^a - e^b|.
inline double log_abs_diff(double a, double b) {
  if (a == b) return kLogZero;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  if (lo == kLogZero) return hi;
  const double t = lo - hi;
  // log(1 - e^t), split for accuracy near t = 0
  const double tail = t > -std::numbers::ln2 ? std::log(-std::expm1(t)) : std::log1p(-std::exp(t));
  return hi + tail;
}

/// Streaming log-sum-exp.
class LogSum {
 public:
  void add(double log_term) {
    if (log_term == kLogZero) return;
    if (std::isinf(log_term)) {
      max_ = log_term;
      scaled_ = 1.0;
      return;
    }
    if (max_ == kLogZero) {
      max_ = log_term;
      scaled_ = 1.0;
    } else if (log_term > max_) {
      scaled_ = scaled_ * std::exp(max_ - log_term) + 1.0;
      max_ = log_term;
    } else {
      scaled_ += std::exp(log_term - max_);
    }
  }

  double value() const { return max_ == kLogZero ? kLogZero : max_ + std::log(scaled_); }

 private:
  double max_ = kLogZero;
  double scaled_ = 0.0;
};

/// A nonnegative real. `log()` is always valid; `exact()` is set whenever the
/// value was obtained by exact rational arithmetic.
class Quantity {
 public:
  Quantity() = default;

  static Quantity zero() { return exact(Rational(0)); }
  static Quantity one() { return exact(Rational(1)); }

  static Quantity exact(Rational q) {
    if (q < 0) throw Error(ErrorCode::InvalidArgument, "Quantity must be nonnegative");
    Quantity out;
    out.log_ = log_of(q);
    out.exact_ = std::move(q);
    return out;
  }

  static Quantity from_log(double log_value) {
    if (std::isnan(log_value)) throw Error(ErrorCode::InvalidArgument, "NaN log value");
    Quantity out;
    out.log_ = log_value;
    return out;
  }

  static Quantity from_double(double value) {
    if (!(value >= 0)) throw Error(ErrorCode::InvalidArgument, "Quantity must be nonnegative");
    return from_log(value == 0 ? kLogZero : std::log(value));
  }

  double log() const { return log_; }
  const std::optional<Rational>& exact() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }
  bool is_zero() const { return log_ == kLogZero; }

  /// Linear value; overflows to +inf for astronomically large magnitudes.
  double to_double() const {
    if (exact_) return exact_->convert_to<double>();
    return std::exp(log_);
  }

  /// Drops the exact part (used when a computation is forced into log domain).
  Quantity as_log() const { return from_log(log_); }

  friend Quantity operator+(const Quantity& a, const Quantity& b) {
    if (a.exact_ && b.exact_) return exact(*a.exact_ + *b.exact_);
    return from_log(log_add(a.log_, b.log_));
  }

  friend Quantity operator*(const Quantity& a, const Quantity& b) {
    if (a.exact_ && b.exact_) return exact(*a.exact_ * *b.exact_);
    if (a.is_zero() || b.is_zero()) return from_log(kLogZero);
    return from_log(a.log_ + b.log_);
  }

  friend Quantity operator/(const Quantity& a, const Quantity& b) {
    if (b.is_zero()) throw Error(ErrorCode::NonpositiveMass, "division by a zero quantity");
    if (a.exact_ && b.exact_) return exact(*a.exact_ / *b.exact_);
    if (a.is_zero()) return from_log(kLogZero);
    return from_log(a.log_ - b.log_);
  }

  /// |a - b|.
  friend Quantity abs_diff(const Quantity& a, const Quantity& b) {
    if (a.exact_ && b.exact_) return exact(boost::multiprecision::abs(*a.exact_ - *b.exact_));
    return from_log(log_abs_diff(a.log_, b.log_));
  }

  /// Exact comparison when both sides are exact, otherwise by logs.
  friend std::strong_ordering compare(const Quantity& a, const Quantity& b) {
    if (a.exact_ && b.exact_) {
      if (*a.exact_ < *b.exact_) return std::strong_ordering::less;
      if (*a.exact_ > *b.exact_) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    if (a.log_ < b.log_) return std::strong_ordering::less;
    if (a.log_ > b.log_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend bool operator<(const Quantity& a, const Quantity& b) { return compare(a, b) < 0; }
  friend bool operator>(const Quantity& a, const Quantity& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Quantity& a, const Quantity& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Quantity& a, const Quantity& b) { return compare(a, b) >= 0; }
  friend bool operator==(const Quantity& a, const Quantity& b) { return compare(a, b) == 0; }

 private:
  double log_ = kLogZero;
  std::optional<Rational> exact_;
};

inline std::string rational_to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

/// Parses "log:<v>" as a log-domain quantity and anything else as an exact decimal.
inline Quantity parse_quantity(std::string_view text) {
  if (text.substr(0, 4) == "log:") {
    const std::string rest(text.substr(4));
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad log-domain literal '" + std::string(text) + "'");
    }
    if (used != rest.size()) throw Error(ErrorCode::ParseError, "bad log-domain literal '" + std::string(text) + "'");
    return Quantity::from_log(v);
  }
  return Quantity::exact(parse_decimal(text));
}

}  // namespace hlmax
