#include "opnkit/arith.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "opnkit/primes.hpp"

namespace opn {

Ratio make_ratio(const Natural& numerator, const Natural& denominator) {
  if (denominator == 0) throw std::domain_error("ratio with zero denominator");
  Ratio q(numerator, denominator);
  q.canonicalize();
  return q;
}

std::string render(const Ratio& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ParseError::ParseError(const std::string& what, std::size_t offset)
    : FactorizationError(what + " at offset " + std::to_string(offset)), offset_(offset) {}

CompositeFactorError::CompositeFactorError(const Natural& factor)
    : FactorizationError("factor " + factor.get_str() + " is not prime"), factor_(factor) {}

Factorization Factorization::from_terms(std::vector<PrimePower> terms) {
  for (const auto& t : terms) {
    if (t.prime < 2) throw FactorizationError("factor " + t.prime.get_str() + " is not a prime (must be >= 2)");
    if (t.exponent == 0) throw FactorizationError("exponent of " + t.prime.get_str() + " must be >= 1");
  }
  std::sort(terms.begin(), terms.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });

  std::vector<PrimePower> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().prime == t.prime) {
      std::uint64_t sum = std::uint64_t{merged.back().exponent} + t.exponent;
      if (sum > std::numeric_limits<std::uint32_t>::max())
        throw FactorizationError("exponent of " + t.prime.get_str() + " overflows 32 bits");
      merged.back().exponent = static_cast<std::uint32_t>(sum);
    } else {
      merged.push_back(std::move(t));
    }
  }
  for (const auto& t : merged)
    if (!is_prime(t.prime)) throw CompositeFactorError(t.prime);
  return Factorization(std::move(merged));
}

bool Factorization::divisible_by(const Natural& prime) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const PrimePower& t) { return t.prime == prime; });
}

Factorization Factorization::radical() const {
  auto terms = terms_;
  for (auto& t : terms) t.exponent = 1;
  return Factorization(std::move(terms));
}

Factorization Factorization::with_exponent(std::size_t index, std::uint32_t exponent) const {
  if (index >= terms_.size()) throw std::out_of_range("prime index out of range");
  if (exponent == 0) throw FactorizationError("exponent must be >= 1");
  auto terms = terms_;
  terms[index].exponent = exponent;
  return Factorization(std::move(terms));
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::Deficient: return "Deficient";
    case Classification::Perfect: return "Perfect";
    case Classification::Abundant: return "Abundant";
  }
  return "?";
}

namespace {

class FactorizationParser {
 public:
  explicit FactorizationParser(std::string_view text) : text_(text) {}

  Factorization parse() {
    skip_space();
    if (at_end()) throw ParseError("empty factorization", pos_);

    std::vector<PrimePower> terms;
    for (;;) {
      const std::size_t start = pos_;
      Natural base = digits("expected a prime");
      if (base < 2) {
        skip_space();
        // A lone "1" is N = 1; anywhere else it is a bad factor.
        if (base == 1 && terms.empty() && at_end()) return Factorization{};
        throw FactorizationError("factor " + base.get_str() + " at offset " + std::to_string(start) +
                                 " is not a prime");
      }
      std::uint32_t exponent = 1;
      skip_space();
      if (peek('^')) {
        ++pos_;
        skip_space();
        const std::size_t exp_pos = pos_;
        Natural e = digits("expected an exponent");
        if (e == 0) throw ParseError("exponent must be >= 1", exp_pos);
        if (e > std::numeric_limits<std::uint32_t>::max())
          throw ParseError("exponent does not fit in 32 bits", exp_pos);
        exponent = static_cast<std::uint32_t>(e.get_ui());
        skip_space();
      }
      terms.push_back({std::move(base), exponent});
      if (at_end()) break;
      if (!peek('*')) throw ParseError("expected '*' or end of input", pos_);
      ++pos_;
      skip_space();
    }
    return Factorization::from_terms(std::move(terms));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  bool peek(char c) const { return !at_end() && text_[pos_] == c; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Natural digits(const char* expectation) {
    const std::size_t start = pos_;
    while (!at_end() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (start == pos_) throw ParseError(expectation, start);
    return Natural(std::string(text_.substr(start, pos_ - start)), 10);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Factorization parse_factorization(std::string_view text) { return FactorizationParser(text).parse(); }

std::string render(const Factorization& f) {
  if (f.empty()) return "1";
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += '*';
    out += t.prime.get_str();
    if (t.exponent != 1) out += "^" + std::to_string(t.exponent);
  }
  return out;
}

Natural value(const Factorization& f) {
  Natural n = 1, pk;
  for (const auto& t : f.terms()) {
    mpz_pow_ui(pk.get_mpz_t(), t.prime.get_mpz_t(), t.exponent);
    n *= pk;
  }
  return n;
}

Natural sigma(const Factorization& f) {
  Natural s = 1, pk;
  for (const auto& t : f.terms()) {
    mpz_pow_ui(pk.get_mpz_t(), t.prime.get_mpz_t(), std::uint64_t{t.exponent} + 1);
    s *= (pk - 1) / (t.prime - 1);
  }
  return s;
}

Natural alpha(const Factorization& f) {
  Natural a = 1;
  for (const auto& t : f.terms()) a *= t.prime;
  return a;
}

Natural beta(const Factorization& f) {
  Natural b = 0;
  for (const auto& t : f.terms()) b += t.prime;
  return b;
}

std::uint64_t total_exponent(const Factorization& f) {
  std::uint64_t omega = 0;
  for (const auto& t : f.terms()) omega += t.exponent;
  return omega;
}

Ratio abundancy(const Factorization& f) { return make_ratio(sigma(f), 2 * value(f)); }

Classification classify(const Factorization& f) {
  const Natural s = sigma(f);
  const Natural twice = 2 * value(f);
  if (s == twice) return Classification::Perfect;
  return s > twice ? Classification::Abundant : Classification::Deficient;
}

Ratio reciprocal_sum(const Factorization& f) {
  Ratio sum = 0;
  for (const auto& t : f.terms()) sum += Ratio(1, t.prime);
  sum.canonicalize();
  return sum;
}

std::vector<Ratio> symmetric_reciprocal_sums(const Factorization& f) {
  const std::size_t r = f.size();
  // coeff[j] = e_j(p_1, ..., p_i) after processing i primes.
  std::vector<Natural> coeff(r + 1, 0);
  coeff[0] = 1;
  for (std::size_t i = 0; i < r; ++i) {
    const Natural& p = f[i].prime;
    for (std::size_t j = i + 1; j >= 1; --j) coeff[j] += coeff[j - 1] * p;
  }
  // S_k = e_k(1/p) = e_{r-k}(p) / e_r(p).
  std::vector<Ratio> sums;
  sums.reserve(r);
  for (std::size_t k = 1; k <= r; ++k) sums.push_back(make_ratio(coeff[r - k], coeff[r]));
  return sums;
}

Natural residue(const Factorization& f, const Natural& modulus) {
  if (modulus <= 0) throw std::domain_error("modulus must be positive");
  Natural acc = 1 % modulus, pk;
  for (const auto& t : f.terms()) {
    mpz_powm_ui(pk.get_mpz_t(), t.prime.get_mpz_t(), t.exponent, modulus.get_mpz_t());
    acc = (acc * pk) % modulus;
  }
  return acc;
}

BitLengthBounds bit_length_bounds(const Factorization& f) {
  BitLengthBounds b{0, 0};
  for (const auto& t : f.terms()) {
    const auto bits = mpz_sizeinbase(t.prime.get_mpz_t(), 2);
    b.lower += Natural(static_cast<unsigned long>(bits - 1)) * t.exponent;
    b.upper += Natural(static_cast<unsigned long>(bits)) * t.exponent;
  }
  return b;
}

}  // namespace opn
