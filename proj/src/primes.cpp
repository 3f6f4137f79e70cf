#include "opnkit/primes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace opn {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128{a} * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool fits_u64(const Natural& n) { return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

u64 to_u64(const Natural& n) {
  u64 out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

Natural from_u64(u64 v) {
  Natural out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> table = primes_up_to(1000);
  return table;
}

// Brent's variant; returns a nontrivial factor of odd composite n.
u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
    const u64 batch = 128;
    auto step = [&](u64 v) { return static_cast<u64>((u128{mul_mod(v, v, n)} + c) % n); };
    for (u64 len = 1; g == 1; len <<= 1) {
      x = y;
      for (u64 i = 0; i < len; ++i) y = step(y);
      for (u64 k = 0; k < len && g == 1; k += batch) {
        ys = y;
        for (u64 i = 0; i < std::min(batch, len - k); ++i) {
          y = step(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

Natural pollard_brent(const Natural& n) {
  for (unsigned long c = 1;; ++c) {
    Natural y = 2, x = 2, q = 1, g = 1, ys = 2, diff;
    const unsigned long batch = 128;
    auto step = [&](const Natural& v) { return Natural((v * v + c) % n); };
    for (unsigned long len = 1; g == 1; len <<= 1) {
      x = y;
      for (unsigned long i = 0; i < len; ++i) y = step(y);
      for (unsigned long k = 0; k < len && g == 1; k += batch) {
        ys = y;
        for (unsigned long i = 0; i < std::min(batch, len - k); ++i) {
          y = step(y);
          diff = abs(x - y);
          q = (q * diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(const Natural& n, std::vector<PrimePower>& out) {
  std::vector<Natural> stack{n};
  while (!stack.empty()) {
    Natural m = std::move(stack.back());
    stack.pop_back();
    if (m == 1) continue;
    if (is_prime(m)) {
      out.push_back({m, 1});
      continue;
    }
    Natural d;
    if (mpz_perfect_power_p(m.get_mpz_t())) {
      // rho is slow on prime powers; peel off the smallest-degree exact root.
      for (unsigned long k = 2;; ++k) {
        if (mpz_root(d.get_mpz_t(), m.get_mpz_t(), k) != 0) break;
      }
    } else {
      d = fits_u64(m) ? from_u64(pollard_brent(to_u64(m))) : pollard_brent(m);
    }
    stack.push_back(m / d);
    stack.push_back(std::move(d));
  }
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  static constexpr std::array<u64, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (u64 p : witnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : witnesses) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool is_prime(const Natural& n, int rounds) {
  if (n < 2) return false;
  if (fits_u64(n)) return is_prime_u64(to_u64(n));
  return mpz_probab_prime_p(n.get_mpz_t(), rounds) != 0;
}

Factorization factorize(const Natural& n) {
  if (n < 1) throw std::domain_error("factorize requires n >= 1");
  std::vector<PrimePower> parts;
  Natural rest = n;
  for (std::uint32_t p : small_primes()) {
    if (rest == 1) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      std::uint32_t e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        rest /= p;
        ++e;
      }
      parts.push_back({Natural(p), e});
    }
  }
  if (rest > 1) split_into(rest, parts);
  return Factorization::from_terms(std::move(parts));
}

Factorization factorize(std::uint64_t n) { return factorize(from_u64(n)); }

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(std::size_t{limit} + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::uint64_t isqrt_u64(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && u128{r} * r > n) --r;
  while (u128{r + 1} * (r + 1) <= n) ++r;
  return r;
}

}  // namespace opn
