#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's arithmetic paths.

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

namespace oracle {

inline std::uint64_t divisor_sum(std::uint64_t n) {
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    s += d;
    if (d != n / d) s += n / d;
  }
  return s;
}

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t smallest_factor(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

/// S_1..S_r by enumerating all 2^r subsets.
inline std::vector<mpq_class> subset_sums(const std::vector<mpz_class>& primes) {
  const std::size_t r = primes.size();
  std::vector<mpq_class> sums(r, 0);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << r); ++mask) {
    mpz_class product = 1;
    std::size_t k = 0;
    for (std::size_t i = 0; i < r; ++i) {
      if (mask >> i & 1) {
        product *= primes[i];
        ++k;
      }
    }
    sums[k - 1] += mpq_class(1, product);
  }
  for (auto& s : sums) s.canonicalize();
  return sums;
}

/// RAII MPFR value.
class Real {
 public:
  explicit Real(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  mpq_class to_rational() const {
    mpz_class m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    mpq_class q(m);
    if (e >= 0)
      mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), e);
    else
      mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), -e);
    return q;
  }

 private:
  mpfr_t v_;
};

/// MPFR enclosure [lo, hi] of 1/(2^(1/r) - 1)^r (alpha) or r/(2^(1/r) - 1)
/// (beta), evaluated with directed rounding at `bits`.
inline std::pair<mpq_class, mpq_class> bound_enclosure(unsigned long r, bool beta, mpfr_prec_t bits) {
  auto eval = [&](mpfr_rnd_t outer, mpfr_rnd_t inner) {
    // inner rounds the denominator; outer rounds the final quotient.
    Real t(bits), out(bits);
    mpfr_set_ui(t.get(), 2, inner);
    mpfr_rootn_ui(t.get(), t.get(), r, inner);
    mpfr_sub_ui(t.get(), t.get(), 1, inner);
    if (beta) {
      mpfr_ui_div(out.get(), r, t.get(), outer);
    } else {
      mpfr_pow_ui(t.get(), t.get(), r, inner);
      mpfr_ui_div(out.get(), 1, t.get(), outer);
    }
    return out.to_rational();
  };
  return {eval(MPFR_RNDD, MPFR_RNDU), eval(MPFR_RNDU, MPFR_RNDD)};
}

/// MPFR enclosure of x^(1/n) for positive rational x.
inline std::pair<mpq_class, mpq_class> root_enclosure(const mpq_class& x, unsigned long n, mpfr_prec_t bits) {
  auto eval = [&](mpfr_rnd_t rnd) {
    Real t(bits);
    mpfr_set_q(t.get(), x.get_mpq_t(), rnd);
    mpfr_rootn_ui(t.get(), t.get(), n, rnd);
    return t.to_rational();
  };
  return {eval(MPFR_RNDD), eval(MPFR_RNDU)};
}

}  // namespace oracle
