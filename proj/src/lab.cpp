#include "opnkit/lab.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "opnkit/primes.hpp"

namespace opn {

PrimeSet::PrimeSet(std::vector<Natural> primes) : primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i > 0 && primes_[i] == primes_[i - 1])
      throw std::invalid_argument("prime set has duplicate " + primes_[i].get_str());
    if (primes_[i] == 2) throw std::invalid_argument("prime set must hold odd primes only");
    if (!is_prime(primes_[i])) throw std::invalid_argument(primes_[i].get_str() + " is not prime");
  }
}

Factorization PrimeSet::radical() const {
  std::vector<PrimePower> terms;
  terms.reserve(primes_.size());
  for (const auto& p : primes_) terms.push_back({p, 1});
  return Factorization::from_terms(std::move(terms));
}

bool check_keyineq(const Factorization& b, std::size_t prime_index, std::uint32_t exponent) {
  if (prime_index >= b.size()) throw std::invalid_argument("prime index out of range");
  if (b[prime_index].exponent != 1) throw std::invalid_argument("raised prime must have exponent 1 in B");
  if (exponent < 2) throw std::invalid_argument("raised exponent must be >= 2");
  const Factorization c = b.with_exponent(prime_index, exponent);
  return abundancy(c) > abundancy(b);
}

bool verify_chain(const Factorization& f) {
  if (f.empty()) throw std::invalid_argument("chain needs N > 1");
  Factorization step = f.radical();
  Ratio previous = abundancy(step);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const std::uint32_t e = f[k].exponent;
    if (e == 1) continue;  // B_k = B_{k-1}
    step = step.with_exponent(k, e);
    Ratio current = abundancy(step);
    if (!(current > previous)) return false;
    previous = std::move(current);
  }
  return step == f;
}

bool radical_premise(const PrimeSet& ps) {
  Natural num = 1, den = 1;
  for (const auto& p : ps.primes()) {
    num *= p + 1;
    den *= p;
  }
  return num < 2 * den;
}

GmHmOutcome check_gm_hm_step(const PrimeSet& ps, std::size_t k, std::size_t precision_cap_bits) {
  const std::size_t r = ps.size();
  if (k < 1 || k > r) throw std::out_of_range("k must lie in [1, r]");
  const Factorization rad = ps.radical();
  const Ratio s_k = symmetric_reciprocal_sums(rad)[k - 1];
  const Natural a = alpha(rad);
  Natural binom;
  mpz_bin_uiui(binom.get_mpz_t(), r, k);

  if (k == r) {
    // alpha^(-r/r) = 1/alpha and S_r = 1/alpha.
    const Ratio rhs = make_ratio(1, a);
    return {s_k > rhs, s_k == rhs};
  }

  Natural a_pow_k;
  mpz_pow_ui(a_pow_k.get_mpz_t(), a.get_mpz_t(), k);
  for (std::size_t bits = kDefaultStartBits; bits <= precision_cap_bits; bits *= 2) {
    const Interval rhs = Interval::point(binom, bits) / root_enclosure(a_pow_k, r, bits);
    if (compare(rhs.hi(), s_k) < 0) return {true, false};
    if (compare(rhs.lo(), s_k) > 0) return {false, false};
  }
  throw PrecisionExhausted("GM-HM comparison unresolved at " + std::to_string(precision_cap_bits) + " bits");
}

bool check_theorem1_implication(const PrimeSet& ps, std::size_t precision_cap_bits) {
  if (ps.size() == 0) throw std::invalid_argument("prime set must be nonempty");
  if (!radical_premise(ps)) return true;
  const Factorization rad = ps.radical();
  const RefinementPolicy policy{kDefaultStartBits, precision_cap_bits};
  const auto r = ps.size();
  const Ordering3 a = compare_rational_to_bound(Ratio(alpha(rad)), BoundKind::Alpha, r, policy);
  const Ordering3 b = compare_rational_to_bound(Ratio(beta(rad)), BoundKind::Beta, r, policy);
  if (a == Ordering3::Undecided || b == Ordering3::Undecided)
    throw PrecisionExhausted("bound comparison unresolved at " + std::to_string(precision_cap_bits) + " bits");
  return a == Ordering3::Above && b == Ordering3::Above;
}

bool check_theorem2_implication(const PrimeSet& ps) {
  if (ps.size() == 0) throw std::invalid_argument("prime set must be nonempty");
  if (!radical_premise(ps)) return true;
  return reciprocal_sum(ps.radical()) < 1;
}

bool check_symmetric_tail_bound(const PrimeSet& ps) {
  if (ps.size() == 0) throw std::invalid_argument("prime set must be nonempty");
  const auto sums = symmetric_reciprocal_sums(ps.radical());
  Ratio tail = 0;
  for (std::size_t k = 2; k <= sums.size(); ++k) tail += sums[k - 1];
  // (1 + 1/P)^r - (1 + r/P) = 1 - theorem3_rhs(r, P).
  return tail >= 1 - theorem3_rhs(ps.size(), ps.largest());
}

bool check_theorem3_implication(const PrimeSet& ps) {
  if (!check_symmetric_tail_bound(ps)) return false;
  if (!radical_premise(ps)) return true;
  return reciprocal_sum(ps.radical()) < theorem3_rhs(ps.size(), ps.largest());
}

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::KeyIneq: return "keyineq";
    case Suite::Chain: return "chain";
    case Suite::GmHm: return "gmhm";
    case Suite::Theorem1: return "thm1";
    case Suite::Theorem2: return "thm2";
    case Suite::Theorem3: return "thm3";
  }
  return "?";
}

Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::KeyIneq, Suite::Chain, Suite::GmHm, Suite::Theorem1, Suite::Theorem2, Suite::Theorem3})
    if (to_string(s) == name) return s;
  throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
}

std::vector<std::uint32_t> odd_primes_below(std::uint32_t cap) {
  if (cap < 4) return {};
  auto primes = primes_up_to(cap - 1);
  primes.erase(primes.begin());  // 2
  return primes;
}

namespace {

// Rejection sampling on raw engine output, so draws do not depend on the
// standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

std::uint64_t uniform_in(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + uniform_below(rng, hi - lo + 1);
}

std::vector<std::uint32_t> sample_distinct(std::mt19937_64& rng, const std::vector<std::uint32_t>& table,
                                           std::size_t count) {
  if (count > table.size()) throw std::invalid_argument("not enough primes below the cap");
  std::vector<std::uint32_t> picked;
  while (picked.size() < count) {
    const auto p = table[uniform_below(rng, table.size())];
    if (std::find(picked.begin(), picked.end(), p) == picked.end()) picked.push_back(p);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

std::string show(const std::vector<std::uint32_t>& primes) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < primes.size(); ++i) out << (i ? "," : "") << primes[i];
  out << '}';
  return out.str();
}

PrimeSet make_set(const std::vector<std::uint32_t>& primes) {
  std::vector<Natural> values;
  values.reserve(primes.size());
  for (auto p : primes) values.emplace_back(static_cast<unsigned long>(p));
  return PrimeSet(std::move(values));
}

void run_keyineq(const SuiteOptions& o, SuiteSummary& out) {
  std::mt19937_64 rng(o.seed);
  const auto table = primes_up_to(o.keyineq_prime_cap - 1);
  for (std::uint64_t t = 0; t < o.trials; ++t) {
    const auto count = static_cast<std::size_t>(uniform_in(rng, 1, std::min<std::uint64_t>(6, table.size())));
    const auto primes = sample_distinct(rng, table, count);
    std::vector<PrimePower> terms;
    for (auto p : primes)
      terms.push_back({Natural(static_cast<unsigned long>(p)),
                       static_cast<std::uint32_t>(uniform_in(rng, 1, o.keyineq_max_exponent))});
    const auto index = static_cast<std::size_t>(uniform_below(rng, count));
    terms[index].exponent = 1;
    const auto raised = static_cast<std::uint32_t>(uniform_in(rng, 2, std::max<std::uint32_t>(2, o.keyineq_max_exponent)));
    const Factorization b = Factorization::from_terms(std::move(terms));
    ++out.checked;
    if (!check_keyineq(b, index, raised))
      out.counterexamples.push_back("B=" + render(b) + " index=" + std::to_string(index) + " n=" + std::to_string(raised));
  }
}

void run_chain(const SuiteOptions& o, SuiteSummary& out) {
  for (std::uint64_t n = 3; n <= o.limit; n += 2) {
    const Factorization f = factorize(n);
    ++out.checked;
    if (!verify_chain(f)) out.counterexamples.push_back("n=" + std::to_string(n) + " (" + render(f) + ")");
  }
}

template <typename Check>
void run_prime_sets(const SuiteOptions& o, std::size_t min_r, Check check) {
  std::mt19937_64 rng(o.seed);
  const auto table = odd_primes_below(o.prime_cap);
  const std::size_t max_r = std::min(o.max_r, table.size());
  if (max_r < min_r) throw std::invalid_argument("prime cap too small for the requested set sizes");
  for (std::uint64_t t = 0; t < o.trials; ++t) {
    const auto primes = sample_distinct(rng, table, static_cast<std::size_t>(uniform_in(rng, min_r, max_r)));
    check(primes, make_set(primes));
  }
}

}  // namespace

SuiteSummary run_suite(Suite suite, const SuiteOptions& o) {
  SuiteSummary out;
  out.suite = suite;
  switch (suite) {
    case Suite::KeyIneq:
      run_keyineq(o, out);
      break;
    case Suite::Chain:
      run_chain(o, out);
      break;
    case Suite::GmHm:
      run_prime_sets(o, 2, [&](const auto& primes, const PrimeSet& ps) {
        for (std::size_t k = 1; k < ps.size(); ++k) {
          ++out.checked;
          try {
            if (!check_gm_hm_step(ps, k, o.precision_cap_bits).strict_holds)
              out.counterexamples.push_back("ps=" + show(primes) + " k=" + std::to_string(k));
          } catch (const PrecisionExhausted& e) {
            out.counterexamples.push_back("ps=" + show(primes) + " k=" + std::to_string(k) + ": " + e.what());
          }
        }
      });
      break;
    case Suite::Theorem1:
      run_prime_sets(o, 1, [&](const auto& primes, const PrimeSet& ps) {
        ++out.checked;
        try {
          if (!check_theorem1_implication(ps, o.precision_cap_bits)) out.counterexamples.push_back("ps=" + show(primes));
        } catch (const PrecisionExhausted& e) {
          out.counterexamples.push_back("ps=" + show(primes) + ": " + e.what());
        }
      });
      break;
    case Suite::Theorem2:
      run_prime_sets(o, 1, [&](const auto& primes, const PrimeSet& ps) {
        ++out.checked;
        if (!check_theorem2_implication(ps)) out.counterexamples.push_back("ps=" + show(primes));
      });
      break;
    case Suite::Theorem3:
      run_prime_sets(o, 1, [&](const auto& primes, const PrimeSet& ps) {
        ++out.checked;
        if (!check_theorem3_implication(ps)) out.counterexamples.push_back("ps=" + show(primes));
      });
      break;
  }
  return out;
}

nlohmann::json to_json(const SuiteSummary& summary) {
  return nlohmann::json{{"suite", std::string(to_string(summary.suite))},
                        {"checked", summary.checked},
                        {"violations", summary.counterexamples.size()},
                        {"counterexamples", summary.counterexamples},
                        {"passed", summary.passed()}};
}

}  // namespace opn
