#include "opnkit/bounds.hpp"

#include <stdexcept>
#include <string>

namespace opn {

namespace {

void require_r(std::uint64_t r) {
  if (r == 0) throw std::invalid_argument("r must be >= 1");
}

// Guard bits for evaluating (2^(1/r) - 1)^r: cancellation in t - 1 and the
// r-fold product each cost about log2(r) bits.
std::size_t working_bits(std::uint64_t r, std::size_t precision_bits) {
  std::size_t rbits = 0;
  for (auto v = r; v; v >>= 1) ++rbits;
  return precision_bits + 2 * rbits + 16;
}

Interval reciprocal_base(std::uint64_t r, std::size_t bits) {
  return two_to_inverse_r(r, bits) - Interval::point(1, bits);
}

}  // namespace

Interval two_to_inverse_r(std::uint64_t r, std::size_t precision_bits) {
  require_r(r);
  if (precision_bits < 8) throw std::invalid_argument("precision must be at least 8 bits");
  if (r == 1) return Interval::point(2, precision_bits);
  return root_enclosure(2, r, precision_bits);
}

Interval alpha_lower_bound(std::uint64_t r, std::size_t precision_bits) {
  require_r(r);
  if (r == 1) return Interval::point(1, precision_bits);
  const auto w = working_bits(r, precision_bits);
  const Interval denom = pow(reciprocal_base(r, w), r);
  return (Interval::point(1, w) / denom).rounded(precision_bits);
}

Interval beta_lower_bound(std::uint64_t r, std::size_t precision_bits) {
  require_r(r);
  if (r == 1) return Interval::point(1, precision_bits);
  const auto w = working_bits(r, precision_bits);
  return (Interval::point(Natural(static_cast<unsigned long>(r)), w) / reciprocal_base(r, w)).rounded(precision_bits);
}

Interval n_lower_bound(std::uint64_t r, std::size_t precision_bits) { return alpha_lower_bound(r, precision_bits); }

bool PowerOfTwo::exceeds(const Natural& n) const {
  if (n <= 0) return true;
  return Natural(static_cast<unsigned long>(mpz_sizeinbase(n.get_mpz_t(), 2))) <= log2;
}

Natural PowerOfTwo::expand(std::size_t max_bits) const {
  if (log2 > Natural(static_cast<unsigned long>(max_bits))) throw std::length_error("2^" + log2.get_str() + " is too large to expand");
  Natural out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, log2.get_ui());
  return out;
}

PowerOfTwo nielsen_upper_bound(std::uint64_t r) {
  require_r(r);
  PowerOfTwo p;
  mpz_ui_pow_ui(p.log2.get_mpz_t(), 4, r);
  return p;
}

Ratio theorem3_rhs(std::uint64_t r, const Natural& largest_prime) {
  require_r(r);
  if (largest_prime < 2) throw std::invalid_argument("P must be >= 2");
  Natural num, den;
  const Natural next = largest_prime + 1;
  mpz_pow_ui(num.get_mpz_t(), next.get_mpz_t(), r);
  mpz_pow_ui(den.get_mpz_t(), largest_prime.get_mpz_t(), r);
  const Ratio binomial_power = make_ratio(num, den);
  const Ratio linear = make_ratio(largest_prime + static_cast<unsigned long>(r), largest_prime);
  Ratio rhs = 1 - (binomial_power - linear);
  rhs.canonicalize();
  return rhs;
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Alpha: return "alpha_lb";
    case BoundKind::Beta: return "beta_lb";
    case BoundKind::N: return "n_lb";
  }
  return "?";
}

BoundKind parse_bound_kind(std::string_view id) {
  if (id == "alpha_lb") return BoundKind::Alpha;
  if (id == "beta_lb") return BoundKind::Beta;
  if (id == "n_lb") return BoundKind::N;
  throw std::invalid_argument("unknown bound expression '" + std::string(id) + "'");
}

Interval evaluate_bound(BoundKind kind, std::uint64_t r, std::size_t precision_bits) {
  switch (kind) {
    case BoundKind::Alpha: return alpha_lower_bound(r, precision_bits);
    case BoundKind::Beta: return beta_lower_bound(r, precision_bits);
    case BoundKind::N: return n_lower_bound(r, precision_bits);
  }
  throw std::invalid_argument("unknown bound expression");
}

std::string_view to_string(Ordering3 o) {
  switch (o) {
    case Ordering3::Below: return "Below";
    case Ordering3::Above: return "Above";
    case Ordering3::Undecided: return "Undecided";
  }
  return "?";
}

Ordering3 compare_rational_to_bound(const Ratio& x, BoundKind kind, std::uint64_t r, const RefinementPolicy& policy) {
  require_r(r);
  if (r == 1) {
    // All three expressions are exactly 1.
    const int c = cmp(x, 1);
    if (c < 0) return Ordering3::Below;
    if (c > 0) return Ordering3::Above;
    return Ordering3::Undecided;
  }
  for (std::size_t bits = std::max<std::size_t>(policy.start_bits, 8); bits <= policy.cap_bits; bits *= 2) {
    const Interval bound = evaluate_bound(kind, r, bits);
    if (compare(bound.lo(), x) > 0) return Ordering3::Below;
    if (compare(bound.hi(), x) < 0) return Ordering3::Above;
  }
  return Ordering3::Undecided;
}

BoundsReport bounds_report(std::uint64_t r, std::size_t precision_bits) {
  BoundsReport report;
  report.r = r;
  report.precision_bits = precision_bits;
  report.alpha_lb = alpha_lower_bound(r, precision_bits);
  report.beta_lb = beta_lower_bound(r, precision_bits);
  report.n_lb = n_lower_bound(r, precision_bits);
  report.n_ub = nielsen_upper_bound(r);
  return report;
}

nlohmann::json to_json(const BoundsReport& report, std::size_t digits) {
  auto interval = [digits](const Interval& i) {
    return nlohmann::json{{"lo", to_decimal(i.lo(), digits, Round::Down)},
                          {"hi", to_decimal(i.hi(), digits, Round::Up)}};
  };
  return nlohmann::json{{"r", report.r},
                        {"precision_bits", report.precision_bits},
                        {"digits", digits},
                        {"alpha_lb", interval(report.alpha_lb)},
                        {"beta_lb", interval(report.beta_lb)},
                        {"n_lb", interval(report.n_lb)},
                        {"n_ub", {{"log2", report.n_ub.log2.get_str()}}}};
}

}  // namespace opn
