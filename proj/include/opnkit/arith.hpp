#pragma once

// Exact arithmetic over certified prime factorizations.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace opn {

using Natural = mpz_class;
using Ratio = mpq_class;

/// Builds a Ratio in lowest terms. Throws std::domain_error on a zero denominator.
Ratio make_ratio(const Natural& numerator, const Natural& denominator);

/// Renders "num/den", always with the denominator (so zero is "0/1").
std::string render(const Ratio& q);

class FactorizationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public FactorizationError {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class CompositeFactorError : public FactorizationError {
 public:
  explicit CompositeFactorError(const Natural& factor);
  const Natural& factor() const noexcept { return factor_; }

 private:
  Natural factor_;
};

struct PrimePower {
  Natural prime;
  std::uint32_t exponent = 1;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A canonical prime factorization: primes strictly increasing, each certified
/// by is_prime, exponents >= 1. The empty factorization is N = 1.
class Factorization {
 public:
  Factorization() = default;

  /// Sorts, merges repeated primes (summing exponents) and certifies primality.
  static Factorization from_terms(std::vector<PrimePower> terms);

  std::span<const PrimePower> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const PrimePower& operator[](std::size_t i) const { return terms_[i]; }

  bool divisible_by(const Natural& prime) const;

  /// Same primes, all exponents 1.
  Factorization radical() const;

  /// Copy with the exponent at `index` replaced. Throws std::out_of_range or
  /// FactorizationError (exponent 0).
  Factorization with_exponent(std::size_t index, std::uint32_t exponent) const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  explicit Factorization(std::vector<PrimePower> terms) : terms_(std::move(terms)) {}

  std::vector<PrimePower> terms_;
};

enum class Classification { Deficient, Perfect, Abundant };

std::string_view to_string(Classification c);

/// Grammar: term ("*" term)*, term = prime ("^" exponent)?, ASCII digits,
/// optional whitespace. The lone text "1" denotes the empty factorization.
Factorization parse_factorization(std::string_view text);

/// Canonical form, e.g. "3^3*5*7"; the empty factorization renders as "1".
std::string render(const Factorization& f);

Natural value(const Factorization& f);
Natural sigma(const Factorization& f);
Natural alpha(const Factorization& f);
Natural beta(const Factorization& f);

/// Omega(N): prime factors counted with multiplicity.
std::uint64_t total_exponent(const Factorization& f);

/// sigma(N) / 2N in lowest terms.
Ratio abundancy(const Factorization& f);
Classification classify(const Factorization& f);

/// Sum of 1/p over the distinct primes.
Ratio reciprocal_sum(const Factorization& f);

/// S_1..S_r where S_k sums 1/(p_i1 ... p_ik) over all k-subsets of the
/// distinct primes. Uses the coefficient expansion of prod(1 + p_i x), so the
/// cost is O(r^2) integer multiplications; S_0 = 1 is not returned.
std::vector<Ratio> symmetric_reciprocal_sums(const Factorization& f);

/// N mod m without materializing N.
Natural residue(const Factorization& f, const Natural& modulus);

/// Bounds on log2 N from prime bit lengths: lower <= log2 N < upper.
struct BitLengthBounds {
  Natural lower;
  Natural upper;
};
BitLengthBounds bit_length_bounds(const Factorization& f);

}  // namespace opn
