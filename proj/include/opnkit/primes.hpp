#pragma once

#include <cstdint>
#include <vector>

#include "opnkit/arith.hpp"

namespace opn {

/// Miller-Rabin rounds used by is_prime above 2^64.
inline constexpr int kDefaultProbablePrimeRounds = 25;

/// Deterministic Miller-Rabin for n < 2^64 (witnesses: the first twelve primes).
bool is_prime_u64(std::uint64_t n);

/// Exact below 2^64; above, a strong probable-prime test (GMP's BPSW plus
/// `rounds` Miller-Rabin rounds).
bool is_prime(const Natural& n, int rounds = kDefaultProbablePrimeRounds);

/// Trial division by small primes, then Brent's Pollard-rho with restarts at
/// c = 1, 2, 3, ... and x0 = 2. Throws std::domain_error for n < 1.
Factorization factorize(const Natural& n);
Factorization factorize(std::uint64_t n);

/// Sieve of Eratosthenes: all primes p with p <= limit.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

std::uint64_t isqrt_u64(std::uint64_t n);

}  // namespace opn
