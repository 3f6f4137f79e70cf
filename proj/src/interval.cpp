#include "opnkit/interval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace opn {

namespace {

std::size_t bit_length(const Natural& m) {
  return sgn(m) == 0 ? 0 : mpz_sizeinbase(m.get_mpz_t(), 2);
}

Natural shl(const Natural& m, unsigned long s) {
  Natural out;
  mpz_mul_2exp(out.get_mpz_t(), m.get_mpz_t(), s);
  return out;
}

Natural pow10(unsigned long e) {
  Natural out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
  return out;
}

Natural divide(const Natural& n, const Natural& d, Round dir) {
  Natural q;
  if (dir == Round::Down)
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  else
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

Dyadic exact_sum(const Dyadic& a, const Dyadic& b) {
  if (a.sign() == 0) return b;
  if (b.sign() == 0) return a;
  const long e = std::min(a.exponent(), b.exponent());
  return Dyadic(shl(a.mantissa(), a.exponent() - e) + shl(b.mantissa(), b.exponent() - e), e);
}

Round opposite(Round dir) { return dir == Round::Down ? Round::Up : Round::Down; }

}  // namespace

Dyadic::Dyadic(Natural mantissa, long exponent) : mantissa_(std::move(mantissa)), exponent_(exponent) {
  if (sgn(mantissa_) == 0) {
    exponent_ = 0;
    return;
  }
  const auto zeros = mpz_scan1(mantissa_.get_mpz_t(), 0);
  if (zeros > 0) {
    mpz_fdiv_q_2exp(mantissa_.get_mpz_t(), mantissa_.get_mpz_t(), zeros);
    exponent_ += static_cast<long>(zeros);
  }
}

std::size_t Dyadic::bits() const { return bit_length(mantissa_); }

Ratio Dyadic::to_ratio() const {
  if (exponent_ >= 0) return Ratio(shl(mantissa_, exponent_));
  return make_ratio(mantissa_, shl(Natural(1), -exponent_));
}

int compare(const Dyadic& a, const Dyadic& b) {
  const int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  const long top_a = static_cast<long>(a.bits()) + a.exponent();
  const long top_b = static_cast<long>(b.bits()) + b.exponent();
  if (top_a != top_b) return (top_a < top_b ? -1 : 1) * sa;
  const long e = std::min(a.exponent(), b.exponent());
  const int c = cmp(shl(a.mantissa(), a.exponent() - e), shl(b.mantissa(), b.exponent() - e));
  return (c > 0) - (c < 0);
}

int compare(const Dyadic& a, const Ratio& b) {
  const int sa = a.sign(), sb = sgn(b);
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  Natural lhs = a.mantissa() * b.get_den();
  Natural rhs = b.get_num();
  if (a.exponent() >= 0)
    lhs = shl(lhs, a.exponent());
  else
    rhs = shl(rhs, -a.exponent());
  const int c = cmp(lhs, rhs);
  return (c > 0) - (c < 0);
}

Dyadic round(const Dyadic& x, std::size_t bits, Round dir) {
  const std::size_t have = x.bits();
  if (have <= bits) return x;
  const auto shift = have - bits;
  Natural m;
  if (dir == Round::Down)
    mpz_fdiv_q_2exp(m.get_mpz_t(), x.mantissa().get_mpz_t(), shift);
  else
    mpz_cdiv_q_2exp(m.get_mpz_t(), x.mantissa().get_mpz_t(), shift);
  return Dyadic(std::move(m), x.exponent() + static_cast<long>(shift));
}

Dyadic add(const Dyadic& a, const Dyadic& b, std::size_t bits, Round dir) {
  return round(exact_sum(a, b), bits, dir);
}

Dyadic sub(const Dyadic& a, const Dyadic& b, std::size_t bits, Round dir) {
  return round(exact_sum(a, Dyadic(-b.mantissa(), b.exponent())), bits, dir);
}

Dyadic mul(const Dyadic& a, const Dyadic& b, std::size_t bits, Round dir) {
  return round(Dyadic(a.mantissa() * b.mantissa(), a.exponent() + b.exponent()), bits, dir);
}

Dyadic div(const Dyadic& a, const Dyadic& b, std::size_t bits, Round dir) {
  if (b.sign() == 0) throw std::domain_error("division by zero");
  if (a.sign() == 0) return {};
  const long spare = static_cast<long>(bits + b.bits()) - static_cast<long>(a.bits()) + 2;
  const unsigned long k = spare > 0 ? static_cast<unsigned long>(spare) : 0;
  // floor/ceil of the exact quotient, then re-rounding in the same direction.
  Natural q = divide(shl(a.mantissa(), k), b.mantissa(), dir);
  return round(Dyadic(std::move(q), a.exponent() - static_cast<long>(k) - b.exponent()), bits, dir);
}

Dyadic from_ratio(const Ratio& q, std::size_t bits, Round dir) {
  return div(Dyadic(q.get_num()), Dyadic(q.get_den()), bits, dir);
}

Natural integer_root(const Natural& a, unsigned long n) {
  if (n == 0) throw std::domain_error("zeroth root");
  if (a < 0) throw std::domain_error("root of a negative number");
  if (a < 2 || n == 1) return a;
  const std::size_t len = bit_length(a);
  if (n >= len) return 1;  // 1 <= a < 2^n

  // Overestimate from a double-precision log2, padded, then certified.
  long e2 = 0;
  const double frac = mpz_get_d_2exp(&e2, a.get_mpz_t());
  const double t = (static_cast<double>(e2) + std::log2(frac)) / static_cast<double>(n);
  const double whole = std::floor(t);
  const double mant = std::ceil(std::exp2(t - whole) * (1.0 + std::exp2(-30)) * std::exp2(52)) + 1.0;
  Natural x(static_cast<unsigned long>(mant));
  const long shift = static_cast<long>(whole) - 52;
  if (shift >= 0)
    x = shl(x, shift);
  else
    mpz_cdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), -shift);
  x += 1;

  Natural p;
  for (;;) {
    mpz_pow_ui(p.get_mpz_t(), x.get_mpz_t(), n);
    if (p > a) break;
    x *= 2;
  }

  // Integer Newton from above decreases monotonically to floor(a^(1/n)).
  Natural y;
  for (;;) {
    mpz_pow_ui(p.get_mpz_t(), x.get_mpz_t(), n - 1);
    y = ((n - 1) * x + a / p) / n;
    if (y >= x) break;
    x = y;
  }
  return x;
}

Interval::Interval(Dyadic lo, Dyadic hi, std::size_t precision_bits)
    : lo_(std::move(lo)), hi_(std::move(hi)), precision_bits_(precision_bits) {
  if (compare(lo_, hi_) > 0) throw std::invalid_argument("interval with lo > hi");
  if (precision_bits_ == 0) throw std::invalid_argument("interval precision must be positive");
}

Interval Interval::point(const Natural& v, std::size_t precision_bits) {
  return {Dyadic(v), Dyadic(v), precision_bits};
}

Interval Interval::enclose(const Ratio& q, std::size_t precision_bits) {
  return {from_ratio(q, precision_bits, Round::Down), from_ratio(q, precision_bits, Round::Up), precision_bits};
}

Interval Interval::rounded(std::size_t precision_bits) const {
  return {round(lo_, precision_bits, Round::Down), round(hi_, precision_bits, Round::Up), precision_bits};
}

Interval operator+(const Interval& a, const Interval& b) {
  const auto p = std::max(a.precision_bits_, b.precision_bits_);
  return {add(a.lo_, b.lo_, p, Round::Down), add(a.hi_, b.hi_, p, Round::Up), p};
}

Interval operator-(const Interval& a, const Interval& b) {
  const auto p = std::max(a.precision_bits_, b.precision_bits_);
  return {sub(a.lo_, b.hi_, p, Round::Down), sub(a.hi_, b.lo_, p, Round::Up), p};
}

Interval operator*(const Interval& a, const Interval& b) {
  const auto p = std::max(a.precision_bits_, b.precision_bits_);
  const Dyadic* xs[] = {&a.lo_, &a.hi_};
  const Dyadic* ys[] = {&b.lo_, &b.hi_};
  Dyadic lo, hi;
  bool first = true;
  for (const Dyadic* x : xs) {
    for (const Dyadic* y : ys) {
      Dyadic down = mul(*x, *y, p, Round::Down);
      Dyadic up = mul(*x, *y, p, Round::Up);
      if (first || compare(down, lo) < 0) lo = std::move(down);
      if (first || compare(up, hi) > 0) hi = std::move(up);
      first = false;
    }
  }
  return {std::move(lo), std::move(hi), p};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo_.sign() <= 0 && b.hi_.sign() >= 0) throw std::domain_error("interval division by an interval containing zero");
  const auto p = std::max(a.precision_bits_, b.precision_bits_);
  const Dyadic* xs[] = {&a.lo_, &a.hi_};
  const Dyadic* ys[] = {&b.lo_, &b.hi_};
  Dyadic lo, hi;
  bool first = true;
  for (const Dyadic* x : xs) {
    for (const Dyadic* y : ys) {
      Dyadic down = div(*x, *y, p, Round::Down);
      Dyadic up = div(*x, *y, p, Round::Up);
      if (first || compare(down, lo) < 0) lo = std::move(down);
      if (first || compare(up, hi) > 0) hi = std::move(up);
      first = false;
    }
  }
  return {std::move(lo), std::move(hi), p};
}

Interval pow(const Interval& x, unsigned long n) {
  Interval result = Interval::point(1, x.precision_bits());
  Interval base = x;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Interval root_enclosure(const Natural& a, unsigned long n, std::size_t fraction_bits) {
  if (n == 0) throw std::domain_error("zeroth root");
  const Natural scaled = shl(a, n * fraction_bits);
  Natural y = integer_root(scaled, n);
  Natural yn;
  mpz_pow_ui(yn.get_mpz_t(), y.get_mpz_t(), n);
  const long e = -static_cast<long>(fraction_bits);
  Dyadic lo(y, e);
  Dyadic hi(yn == scaled ? y : Natural(y + 1), e);
  const std::size_t p = std::max(fraction_bits, hi.bits());
  return {std::move(lo), std::move(hi), p};
}

std::string to_decimal(const Dyadic& x, std::size_t digits, Round dir) {
  if (digits == 0) throw std::invalid_argument("at least one significant digit required");
  if (x.sign() < 0) return "-" + to_decimal(Dyadic(-x.mantissa(), x.exponent()), digits, opposite(dir));
  if (x.sign() == 0) return "0" + (digits > 1 ? "." + std::string(digits - 1, '0') : std::string{}) + "e+00";

  const Ratio q = x.to_ratio();
  const Natural lower = pow10(static_cast<unsigned long>(digits - 1));
  const Natural upper = lower * 10;
  const long num_bits = static_cast<long>(bit_length(q.get_num()));
  const long den_bits = static_cast<long>(bit_length(q.get_den()));
  long k10 = static_cast<long>(std::floor(static_cast<double>(num_bits - den_bits) * std::log10(2.0)));

  Natural s;
  for (;;) {
    const long e = static_cast<long>(digits) - 1 - k10;
    if (e >= 0)
      s = divide(q.get_num() * pow10(e), q.get_den(), dir);
    else
      s = divide(q.get_num(), q.get_den() * pow10(-e), dir);
    if (s >= upper)
      ++k10;
    else if (s < lower)
      --k10;
    else
      break;
  }

  const std::string d = s.get_str();
  std::string out(1, d[0]);
  if (d.size() > 1) out += "." + d.substr(1);
  const std::string exp_digits = std::to_string(k10 < 0 ? -k10 : k10);
  out += k10 < 0 ? "e-" : "e+";
  if (exp_digits.size() < 2) out += '0';
  out += exp_digits;
  return out;
}

Ratio parse_decimal(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&] { return std::invalid_argument("malformed decimal: " + std::string(text)); };
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  std::string digits;
  long frac_len = 0;
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_dot) ++frac_len;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (digits.empty()) throw fail();
  long exp10 = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw fail();
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) exp_negative = text[i++] == '-';
    if (i == text.size()) throw fail();
    for (; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw fail();
      exp10 = exp10 * 10 + (text[i] - '0');
    }
    if (exp_negative) exp10 = -exp10;
  }
  Natural m(digits, 10);
  if (negative) m = -m;
  const long e = exp10 - frac_len;
  if (e >= 0) return Ratio(m * pow10(e));
  return make_ratio(m, pow10(-e));
}

std::size_t digits_to_bits(std::size_t digits) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(digits) * std::log2(10.0))) + 8;
}

}  // namespace opn
