#pragma once

// Outward-rounded interval arithmetic over dyadic endpoints (m * 2^e).

#include <cstddef>
#include <string>
#include <string_view>

#include "opnkit/arith.hpp"

namespace opn {

enum class Round { Down, Up };

/// Exact value mantissa * 2^exponent.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(Natural mantissa, long exponent);
  explicit Dyadic(const Natural& integer) : Dyadic(integer, 0) {}

  const Natural& mantissa() const noexcept { return mantissa_; }
  long exponent() const noexcept { return exponent_; }
  int sign() const { return sgn(mantissa_); }

  /// Number of significant bits in the mantissa (0 for zero).
  std::size_t bits() const;

  Ratio to_ratio() const;

  friend int compare(const Dyadic& a, const Dyadic& b);
  friend int compare(const Dyadic& a, const Ratio& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return compare(a, b) == 0; }

 private:
  Natural mantissa_ = 0;
  long exponent_ = 0;
};

/// Rounds to at most `bits` significant bits in the given direction.
Dyadic round(const Dyadic& x, std::size_t bits, Round dir);

Dyadic add(const Dyadic& a, const Dyadic& b, std::size_t bits, Round dir);
Dyadic sub(const Dyadic& a, const Dyadic& b, std::size_t bits, Round dir);
Dyadic mul(const Dyadic& a, const Dyadic& b, std::size_t bits, Round dir);
/// Throws std::domain_error when b is zero.
Dyadic div(const Dyadic& a, const Dyadic& b, std::size_t bits, Round dir);
/// Nearest dyadic with `bits` significant bits on the requested side of q.
Dyadic from_ratio(const Ratio& q, std::size_t bits, Round dir);

/// floor(a^(1/n)) by Newton iteration from a certified overestimate.
/// Throws std::domain_error for a < 0 or n == 0.
Natural integer_root(const Natural& a, unsigned long n);

/// Closed interval [lo, hi] guaranteed to contain the represented real.
/// Arithmetic rounds lo down and hi up to `precision_bits` significant bits.
class Interval {
 public:
  Interval() = default;
  Interval(Dyadic lo, Dyadic hi, std::size_t precision_bits);

  static Interval point(const Natural& v, std::size_t precision_bits);
  static Interval enclose(const Ratio& q, std::size_t precision_bits);

  const Dyadic& lo() const noexcept { return lo_; }
  const Dyadic& hi() const noexcept { return hi_; }
  std::size_t precision_bits() const noexcept { return precision_bits_; }

  bool is_point() const { return lo_ == hi_; }
  bool contains(const Ratio& q) const { return compare(lo_, q) <= 0 && compare(hi_, q) >= 0; }
  bool contains(const Interval& other) const {
    return compare(lo_, other.lo_) <= 0 && compare(hi_, other.hi_) >= 0;
  }
  bool overlaps(const Interval& other) const {
    return compare(lo_, other.hi_) <= 0 && compare(other.lo_, hi_) <= 0;
  }
  /// hi - lo, exact.
  Ratio width() const { return hi_.to_ratio() - lo_.to_ratio(); }

  /// Same enclosure re-rounded outward to fewer bits.
  Interval rounded(std::size_t precision_bits) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws std::domain_error if b contains zero.
  friend Interval operator/(const Interval& a, const Interval& b);

 private:
  Dyadic lo_;
  Dyadic hi_;
  std::size_t precision_bits_ = 64;
};

Interval pow(const Interval& x, unsigned long n);

/// Enclosure of a^(1/n) for a >= 0, with absolute width <= 2^-fraction_bits.
/// Exact when a is a perfect n-th power.
Interval root_enclosure(const Natural& a, unsigned long n, std::size_t fraction_bits);

/// Scientific decimal with `digits` significant digits, rounded in `dir`
/// (e.g. "5.8284e+00"). Never rounds toward the value's interior.
std::string to_decimal(const Dyadic& x, std::size_t digits, Round dir);

/// Exact value of a decimal literal such as "-1.25e+03" or "17".
/// Throws std::invalid_argument on malformed text.
Ratio parse_decimal(std::string_view text);

/// Decimal digits to working bits: ceil(digits * log2 10) + 8 guard bits.
std::size_t digits_to_bits(std::size_t digits);

}  // namespace opn
