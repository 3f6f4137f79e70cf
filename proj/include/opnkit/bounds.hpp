#pragma once

// Lower and upper size bounds for an odd perfect number with r distinct prime
// factors, evaluated as certified intervals, plus the exact reciprocal-sum
// bound 1 - [(1 + 1/P)^r - (1 + r/P)].

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "json.hpp"

#include "opnkit/arith.hpp"
#include "opnkit/interval.hpp"

namespace opn {

inline constexpr std::size_t kDefaultStartBits = 64;
inline constexpr std::size_t kDefaultPrecisionCapBits = std::size_t{1} << 20;
inline constexpr std::size_t kDefaultReportDigits = 50;

/// Enclosure of 2^(1/r), width <= 2^(2 - precision_bits); exactly [2, 2] at r = 1.
Interval two_to_inverse_r(std::uint64_t r, std::size_t precision_bits);

/// 1 / (2^(1/r) - 1)^r, lower bound on alpha(N).
Interval alpha_lower_bound(std::uint64_t r, std::size_t precision_bits);
/// r / (2^(1/r) - 1), lower bound on beta(N).
Interval beta_lower_bound(std::uint64_t r, std::size_t precision_bits);
/// Lower bound on N itself; same real as alpha_lower_bound since N > alpha(N).
Interval n_lower_bound(std::uint64_t r, std::size_t precision_bits);

/// Exactly 2^log2, never expanded unless asked.
struct PowerOfTwo {
  Natural log2;

  /// n < 2^log2, decided by bit length.
  bool exceeds(const Natural& n) const;
  /// Materializes the value; throws std::length_error above `max_bits`.
  Natural expand(std::size_t max_bits = std::size_t{1} << 24) const;
};

/// 2^(4^r).
PowerOfTwo nielsen_upper_bound(std::uint64_t r);

/// 1 - ((1 + 1/P)^r - (1 + r/P)), exact. Throws std::invalid_argument for
/// r = 0 or P < 2.
Ratio theorem3_rhs(std::uint64_t r, const Natural& largest_prime);

enum class BoundKind { Alpha, Beta, N };

std::string_view to_string(BoundKind kind);
/// "alpha_lb" | "beta_lb" | "n_lb"; throws std::invalid_argument otherwise.
BoundKind parse_bound_kind(std::string_view id);

Interval evaluate_bound(BoundKind kind, std::uint64_t r, std::size_t precision_bits);

enum class Ordering3 { Below, Above, Undecided };

std::string_view to_string(Ordering3 o);

struct RefinementPolicy {
  std::size_t start_bits = kDefaultStartBits;
  std::size_t cap_bits = kDefaultPrecisionCapBits;
};

/// Where x sits relative to the bound value. At r = 1 every bound is exactly 1
/// and the comparison is rational. Otherwise precision doubles from
/// start_bits until the enclosure excludes x; Undecided once past cap_bits.
Ordering3 compare_rational_to_bound(const Ratio& x, BoundKind kind, std::uint64_t r,
                                    const RefinementPolicy& policy = {});

struct BoundsReport {
  std::uint64_t r = 0;
  Interval alpha_lb;
  Interval beta_lb;
  Interval n_lb;
  PowerOfTwo n_ub;
  std::size_t precision_bits = 0;
};

BoundsReport bounds_report(std::uint64_t r, std::size_t precision_bits);

/// Endpoints rendered as outward-rounded scientific decimals with `digits`
/// significant digits; n_ub as {"log2": "<decimal>"}.
nlohmann::json to_json(const BoundsReport& report, std::size_t digits);

}  // namespace opn
