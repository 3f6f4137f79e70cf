#pragma once

// Property checks for the inequalities behind the odd-perfect-number bounds:
// the exponent-raising inequality sigma(C)/2C > sigma(B)/2B, the radical-to-N
// chain, the GM-HM step on S_k, and the three implications from
// sigma(rad N) < 2 rad N to the alpha/beta and reciprocal-sum bounds.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "opnkit/arith.hpp"
#include "opnkit/bounds.hpp"

namespace opn {

/// Thrown when an interval decision does not resolve below the precision cap.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Distinct odd primes, strictly increasing.
class PrimeSet {
 public:
  /// Sorts; throws std::invalid_argument on duplicates, 2, or non-primes.
  explicit PrimeSet(std::vector<Natural> primes);

  std::span<const Natural> primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }
  const Natural& largest() const { return primes_.back(); }

  /// The squarefree factorization prod p_i.
  Factorization radical() const;

 private:
  std::vector<Natural> primes_;
};

/// Raises the exponent-1 prime at `prime_index` of `b` to `exponent` (giving C)
/// and returns whether sigma(C)/2C > sigma(B)/2B exactly. Throws
/// std::invalid_argument if that exponent is not 1 or exponent < 2.
bool check_keyineq(const Factorization& b, std::size_t prime_index, std::uint32_t exponent);

/// Walks B_0 = rad N, B_k = first k prime powers restored, B_r = N, and checks
/// abundancy never decreases, increasing strictly exactly where n_k >= 2.
/// Throws std::invalid_argument for the empty factorization.
bool verify_chain(const Factorization& f);

struct GmHmOutcome {
  bool strict_holds = false;
  /// k = r: both sides are exactly 1/alpha.
  bool equality = false;
};

/// Decides S_k > C(r,k) * alpha^(-k/r). Throws std::out_of_range for k outside
/// [1, r] and PrecisionExhausted if the cap is reached.
GmHmOutcome check_gm_hm_step(const PrimeSet& ps, std::size_t k, std::size_t precision_cap_bits = std::size_t{1} << 16);

/// True iff abundancy(rad) < 1 exactly.
bool radical_premise(const PrimeSet& ps);

/// If radical_premise holds, alpha and beta must sit Above their lower bounds.
/// Throws PrecisionExhausted if an interval decision stays Undecided.
bool check_theorem1_implication(const PrimeSet& ps, std::size_t precision_cap_bits = std::size_t{1} << 16);
/// If radical_premise holds, sum 1/p_i < 1.
bool check_theorem2_implication(const PrimeSet& ps);
/// sum_{k=2..r} S_k >= (1 + 1/P)^r - (1 + r/P), unconditionally.
bool check_symmetric_tail_bound(const PrimeSet& ps);
/// If radical_premise holds, sum 1/p_i < theorem3_rhs(r, P); also requires
/// check_symmetric_tail_bound.
bool check_theorem3_implication(const PrimeSet& ps);

enum class Suite { KeyIneq, Chain, GmHm, Theorem1, Theorem2, Theorem3 };

std::string_view to_string(Suite s);
/// "keyineq" | "chain" | "gmhm" | "thm1" | "thm2" | "thm3".
Suite parse_suite(std::string_view name);

struct SuiteOptions {
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 42;
  /// Chain suite: every odd n in [3, limit].
  std::uint64_t limit = 100'000;
  /// Prime-set suites sample odd primes below this.
  std::uint32_t prime_cap = 10'000;
  std::size_t max_r = 12;
  /// keyineq samples primes below this with exponents below keyineq_max_exponent + 1.
  std::uint32_t keyineq_prime_cap = 1'000;
  std::uint32_t keyineq_max_exponent = 9;
  std::size_t precision_cap_bits = std::size_t{1} << 16;
};

struct SuiteSummary {
  Suite suite = Suite::KeyIneq;
  std::uint64_t checked = 0;
  std::vector<std::string> counterexamples;

  bool passed() const { return counterexamples.empty(); }
};

/// Deterministic for a given SuiteOptions (seeded std::mt19937_64).
SuiteSummary run_suite(Suite suite, const SuiteOptions& options);

/// Odd primes p < cap, ascending.
std::vector<std::uint32_t> odd_primes_below(std::uint32_t cap);

nlohmann::json to_json(const SuiteSummary& summary);

}  // namespace opn
