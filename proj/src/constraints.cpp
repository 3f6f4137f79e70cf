#include "opnkit/constraints.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace opn {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::NotApplicable: return "NotApplicable";
    case Verdict::Undecided: return "Undecided";
  }
  return "?";
}

std::string_view to_string(Overall o) {
  switch (o) {
    case Overall::Viable: return "Viable";
    case Overall::Refuted: return "Refuted";
    case Overall::Undecided: return "Undecided";
  }
  return "?";
}

const ConstraintVerdict* ConstraintReport::find(std::string_view id) const {
  for (const auto& v : verdicts)
    if (v.id == id) return &v;
  return nullptr;
}

namespace {

Natural pow10(unsigned long e) {
  Natural out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
  return out;
}

Natural power(const Natural& base, unsigned long e) {
  Natural out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

std::string str(const Natural& n) { return n.get_str(); }
std::string str(std::size_t n) { return std::to_string(n); }

std::string pass_or(bool ok, std::string_view good, std::string_view bad) { return std::string(ok ? good : bad); }

ConstraintVerdict verdict(std::string id, bool ok, std::string detail) {
  return {std::move(id), ok ? Verdict::Pass : Verdict::Fail, std::move(detail)};
}

ConstraintVerdict not_applicable(std::string id, std::string detail) {
  return {std::move(id), Verdict::NotApplicable, std::move(detail)};
}

ConstraintVerdict check_parity(const Factorization& f) {
  if (f.empty()) return verdict("parity", false, "N = 1, need N > 1");
  if (f[0].prime == 2) return verdict("parity", false, "N is even: 2^" + str(f[0].exponent) + " divides N");
  return verdict("parity", true, "N is odd and N > 1");
}

ConstraintVerdict check_euler_form(const Factorization& f) {
  std::vector<const PrimePower*> odd;
  std::string q;
  for (const auto& t : f.terms()) {
    if (t.exponent % 2 == 1) {
      odd.push_back(&t);
    } else {
      if (!q.empty()) q += '*';
      q += str(t.prime);
      if (t.exponent / 2 != 1) q += "^" + str(t.exponent / 2);
    }
  }
  if (q.empty()) q = "1";
  if (odd.empty()) return verdict("euler_form", false, "no prime has an odd exponent (N is a perfect square)");
  if (odd.size() > 1) {
    std::string list;
    for (const auto* t : odd) list += (list.empty() ? "" : ", ") + str(t->prime) + "^" + str(t->exponent);
    return verdict("euler_form", false, str(odd.size()) + " primes have odd exponents (" + list + "), need exactly 1");
  }
  const PrimePower& p = *odd.front();
  const auto p_mod = static_cast<unsigned>(mpz_fdiv_ui(p.prime.get_mpz_t(), 4));
  const unsigned n_mod = p.exponent % 4;
  const std::string detail = "P = " + str(p.prime) + " (P mod 4 = " + str(std::size_t{p_mod}) + "), n = " +
                             str(p.exponent) + " (n mod 4 = " + str(std::size_t{n_mod}) + "), Q = " + q;
  return verdict("euler_form", p_mod == 1 && n_mod == 1, detail);
}

ConstraintVerdict check_steuerwald(const Factorization& f) {
  for (const auto& t : f.terms())
    if (t.exponent >= 2) return verdict("steuerwald", true, str(t.prime) + "^" + str(t.exponent) + " has exponent >= 2");
  return verdict("steuerwald", false, "all " + str(f.size()) + " exponents equal 1");
}

ConstraintVerdict check_touchard(const Factorization& f) {
  const Natural m12 = residue(f, 12), m36 = residue(f, 36);
  const bool ok = m12 == 1 || m36 == 9;
  return verdict("touchard", ok,
                 "N mod 12 = " + str(m12) + ", N mod 36 = " + str(m36) + pass_or(ok, "", "; need 1 (mod 12) or 9 (mod 36)"));
}

ConstraintVerdict check_min(std::string id, std::size_t r, std::size_t need) {
  const bool ok = r >= need;
  return verdict(std::move(id), ok, "r = " + str(r) + (ok ? " >= " : " < ") + str(need));
}

ConstraintVerdict check_guarded_min(std::string id, const Factorization& f, std::initializer_list<unsigned long> absent,
                                    std::size_t need) {
  for (unsigned long p : absent)
    if (f.divisible_by(Natural(p))) return not_applicable(std::move(id), str(Natural(p)) + " divides N");
  return check_min(std::move(id), f.size(), need);
}

ConstraintVerdict check_hare(const Factorization& f) {
  const auto omega = total_exponent(f);
  const bool ok = omega >= 75;
  return verdict("hare_omega", ok, "Omega(N) = " + str(omega) + (ok ? " >= 75" : " < 75"));
}

ConstraintVerdict check_largest_three(const Factorization& f) {
  const std::size_t r = f.size();
  if (r == 0) return not_applicable("largest_three", "N has no prime factors");
  static const char* names[] = {"p_r", "p_(r-1)", "p_(r-2)"};
  static const unsigned long exps[] = {8, 4, 2};
  bool ok = true;
  std::string detail;
  for (std::size_t j = 0; j < 3; ++j) {
    if (!detail.empty()) detail += "; ";
    if (j >= r) {
      detail += std::string(names[j]) + " n/a (r = " + str(r) + ")";
      continue;
    }
    const Natural& p = f[r - 1 - j].prime;
    const bool part = p > pow10(exps[j]);
    ok = ok && part;
    detail += std::string(names[j]) + " = " + str(p) + (part ? " > " : " <= ") + "10^" + str(exps[j]);
  }
  return verdict("largest_three", ok, detail);
}

ConstraintVerdict check_perisastri(const Factorization& f) {
  if (f.empty()) return not_applicable("perisastri_smallest", "N has no prime factors");
  const Natural lhs = 3 * f[0].prime;
  const Natural rhs = Natural(static_cast<unsigned long>(2 * f.size() + 9));
  const bool ok = lhs <= rhs;
  return verdict("perisastri_smallest", ok, "3*p_1 = " + str(lhs) + (ok ? " <= " : " > ") + "2r+9 = " + str(rhs));
}

ConstraintVerdict check_kishore(const Factorization& f) {
  const std::size_t r = f.size();
  if (r < 2) return not_applicable("kishore", "r = " + str(r) + " < 2");
  bool ok = true;
  std::string detail;
  for (std::size_t i = 2; i <= std::min<std::size_t>(6, r); ++i) {
    Natural bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), 2, 1ul << (i - 1));
    bound *= static_cast<unsigned long>(r - i + 1);
    const Natural& p = f[i - 1].prime;
    const bool part = p < bound;
    ok = ok && part;
    if (!detail.empty()) detail += "; ";
    detail += "p_" + str(i) + " = " + str(p) + (part ? " < " : " >= ") + str(bound);
  }
  return verdict("kishore", ok, detail);
}

ConstraintVerdict check_cohen(const Factorization& f) {
  const Natural limit = pow10(20);  // 2^66 < 10^20 < 2^67
  Natural largest = 0;
  std::string largest_text = "1";
  for (const auto& t : f.terms()) {
    const auto bits = mpz_sizeinbase(t.prime.get_mpz_t(), 2);
    if ((bits - 1) * std::uint64_t{t.exponent} >= 67)
      return verdict("cohen_component", true, str(t.prime) + "^" + str(t.exponent) + " >= 2^67 > 10^20");
    const Natural pk = power(t.prime, t.exponent);
    if (pk > limit) return verdict("cohen_component", true, str(t.prime) + "^" + str(t.exponent) + " = " + str(pk) + " > 10^20");
    if (pk > largest) {
      largest = pk;
      largest_text = str(t.prime) + "^" + str(t.exponent) + " = " + str(pk);
    }
  }
  return verdict("cohen_component", false, "largest prime power " + largest_text + " <= 10^20");
}

ConstraintVerdict check_brent(const Factorization& f) {
  // 2^996 < 10^300 < 2^997.
  const auto b = bit_length_bounds(f);
  if (b.lower >= 997) return verdict("brent_size", true, "log2 N >= " + str(b.lower) + " >= 997, so N > 10^300");
  if (b.upper <= 996) {
    return verdict("brent_size", false, "N = " + str(value(f)) + " < 2^" + str(b.upper) + " <= 2^996 < 10^300");
  }
  const Natural n = value(f);
  const bool ok = n > pow10(300);
  return verdict("brent_size", ok, "N = " + str(n) + (ok ? " > " : " <= ") + "10^300");
}

ConstraintVerdict check_nielsen(const Factorization& f, const AuditOptions& options) {
  if (f.empty()) return not_applicable("nielsen_size", "r = 0");
  const PowerOfTwo bound = nielsen_upper_bound(f.size());
  const Natural& limit = bound.log2;
  const std::string rhs = "4^r = " + (mpz_sizeinbase(limit.get_mpz_t(), 10) <= 40 ? str(limit) : "4^" + str(f.size()));
  const auto b = bit_length_bounds(f);
  // N < 2^upper and N >= 2^lower.
  if (b.upper <= limit) return verdict("nielsen_size", true, "log2 N < " + str(b.upper) + " <= " + rhs);
  if (b.lower >= limit) return verdict("nielsen_size", false, "log2 N >= " + str(b.lower) + " >= " + rhs);
  if (b.lower > Natural(static_cast<unsigned long>(options.max_eval_bits)))
    return {"nielsen_size", Verdict::Undecided, "N has more than " + str(options.max_eval_bits) + " bits; not evaluated"};
  const Natural n = value(f);
  const Natural bits(static_cast<unsigned long>(mpz_sizeinbase(n.get_mpz_t(), 2)));
  const bool ok = bits <= limit;
  return verdict("nielsen_size", ok, "bit length of N = " + str(bits) + (ok ? " <= " : " > ") + rhs);
}

ConstraintVerdict check_bound(std::string id, const Natural& x, BoundKind kind, std::size_t r, std::string_view symbol,
                              const AuditOptions& options) {
  if (r == 0) return not_applicable(std::move(id), "r = 0");
  const Ordering3 o = compare_rational_to_bound(Ratio(x), kind, r, {kDefaultStartBits, options.precision_cap_bits});
  const Interval shown = evaluate_bound(kind, r, kDefaultStartBits);
  const std::string range = "[" + to_decimal(shown.lo(), 20, Round::Down) + ", " + to_decimal(shown.hi(), 20, Round::Up) + "]";
  const std::string lhs = std::string(symbol) + " = " + str(x);
  switch (o) {
    case Ordering3::Above: return verdict(std::move(id), true, lhs + " > bound(r = " + str(r) + ") in " + range);
    case Ordering3::Below: return verdict(std::move(id), false, lhs + " < bound(r = " + str(r) + ") in " + range);
    case Ordering3::Undecided: break;
  }
  return {std::move(id), Verdict::Undecided,
          lhs + " vs bound(r = " + str(r) + ") in " + range + " unresolved at " + str(options.precision_cap_bits) + " bits"};
}

ConstraintVerdict check_thm2(const Factorization& f) {
  const Ratio s = reciprocal_sum(f);
  const bool ok = s < 1;
  return verdict("thm2_recip", ok, "sum 1/p_i = " + render(s) + (ok ? " < 1" : " >= 1"));
}

ConstraintVerdict check_thm3(const Factorization& f) {
  if (f.empty()) return not_applicable("thm3_recip", "r = 0");
  const Ratio s = reciprocal_sum(f);
  const Natural& p = f[f.size() - 1].prime;
  const Ratio rhs = theorem3_rhs(f.size(), p);
  const bool ok = s < rhs;
  return verdict("thm3_recip", ok,
                 "sum 1/p_i = " + render(s) + (ok ? " < " : " >= ") + "1 - [(1+1/" + str(p) + ")^" + str(f.size()) +
                     " - (1+" + str(f.size()) + "/" + str(p) + ")] = " + render(rhs));
}

ConstraintVerdict check_perfect(const Factorization& f, const AuditOptions& options) {
  const auto b = bit_length_bounds(f);
  // digits <= upper * log10(2) + 1
  const Natural digits_bound = b.upper * 30103 / 100000 + 1;
  if (digits_bound > Natural(static_cast<unsigned long>(options.max_exact_digits)))
    return {"perfect_exact", Verdict::Undecided,
            "N has up to " + str(digits_bound) + " digits, above the evaluation cap of " + str(options.max_exact_digits)};
  const Natural s = sigma(f);
  const Natural twice = 2 * value(f);
  if (s == twice) return verdict("perfect_exact", true, "sigma(N) = 2N = " + str(twice));
  if (mpz_sizeinbase(twice.get_mpz_t(), 10) <= 120)
    return verdict("perfect_exact", false, "sigma(N) = " + str(s) + " != 2N = " + str(twice));
  const Ratio a = make_ratio(s, twice);
  return verdict("perfect_exact", false,
                 "sigma(N)/2N = " + to_decimal(from_ratio(a, 80, Round::Down), 20, Round::Down) +
                     "... != 1");
}

}  // namespace

const std::vector<std::string_view>& constraint_ids() {
  static const std::vector<std::string_view> ids{
      "parity",        "euler_form",      "steuerwald",          "touchard",           "min_distinct",
      "min_distinct_no3", "min_distinct_no3no5", "min_distinct_no357", "hare_omega",   "largest_three",
      "perisastri_smallest", "kishore",   "cohen_component",     "brent_size",         "nielsen_size",
      "thm1_alpha",    "thm1_beta",       "thm2_recip",          "thm3_recip",         "perfect_exact"};
  return ids;
}

Overall combine(const std::vector<ConstraintVerdict>& verdicts) {
  bool undecided = false;
  for (const auto& v : verdicts) {
    if (v.verdict == Verdict::Fail) return Overall::Refuted;
    if (v.verdict == Verdict::Undecided) undecided = true;
  }
  return undecided ? Overall::Undecided : Overall::Viable;
}

ConstraintReport audit(const Factorization& f, const AuditOptions& options) {
  ConstraintReport report;
  report.candidate = f;
  const std::size_t r = f.size();
  auto& v = report.verdicts;
  v.push_back(check_parity(f));
  v.push_back(check_euler_form(f));
  v.push_back(check_steuerwald(f));
  v.push_back(check_touchard(f));
  v.push_back(check_min("min_distinct", r, 9));
  v.push_back(check_guarded_min("min_distinct_no3", f, {3}, 12));
  v.push_back(check_guarded_min("min_distinct_no3no5", f, {3, 5}, 15));
  v.push_back(check_guarded_min("min_distinct_no357", f, {3, 5, 7}, 27));
  v.push_back(check_hare(f));
  v.push_back(check_largest_three(f));
  v.push_back(check_perisastri(f));
  v.push_back(check_kishore(f));
  v.push_back(check_cohen(f));
  v.push_back(check_brent(f));
  v.push_back(check_nielsen(f, options));
  v.push_back(check_bound("thm1_alpha", alpha(f), BoundKind::Alpha, r, "alpha(N)", options));
  v.push_back(check_bound("thm1_beta", beta(f), BoundKind::Beta, r, "beta(N)", options));
  v.push_back(check_thm2(f));
  v.push_back(check_thm3(f));
  v.push_back(check_perfect(f, options));
  report.overall = combine(v);
  return report;
}

std::string explain(const ConstraintReport& report) {
  std::ostringstream out;
  out << "candidate: " << render(report.candidate) << '\n';
  for (const auto& v : report.verdicts) {
    switch (v.verdict) {
      case Verdict::Pass: out << "PASS"; break;
      case Verdict::Fail: out << "FAIL"; break;
      case Verdict::NotApplicable: out << "N/A"; break;
      case Verdict::Undecided: out << "UNDECIDED"; break;
    }
    out << ' ' << v.id << ": " << v.detail << '\n';
  }
  out << "overall: " << to_string(report.overall) << '\n';
  return out.str();
}

nlohmann::json to_json(const ConstraintReport& report) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : report.verdicts)
    verdicts.push_back({{"id", v.id}, {"verdict", std::string(to_string(v.verdict))}, {"detail", v.detail}});
  return {{"candidate", render(report.candidate)},
          {"verdicts", verdicts},
          {"overall", std::string(to_string(report.overall))}};
}

}  // namespace opn
