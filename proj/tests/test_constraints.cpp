#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "opnkit/constraints.hpp"
#include "opnkit/primes.hpp"

using namespace opn;

namespace {

Verdict verdict_of(const ConstraintReport& r, std::string_view id) {
  const auto* v = r.find(id);
  REQUIRE(v != nullptr);
  return v->verdict;
}

Factorization random_candidate(std::mt19937_64& rng, const std::vector<std::uint32_t>& pool, bool allow_two) {
  std::vector<PrimePower> terms;
  const std::size_t r = 1 + rng() % 12;
  for (std::size_t i = 0; i < r; ++i) {
    const bool two = allow_two && rng() % 5 == 0;
    terms.push_back({two ? Natural(2) : Natural(pool[rng() % pool.size()]), static_cast<std::uint32_t>(1 + rng() % 6)});
  }
  return Factorization::from_terms(terms);
}

}  // namespace

TEST_CASE("report lists every check in order") {
  const auto r = audit(parse_factorization("3^2*5*7^2"));
  REQUIRE(r.verdicts.size() == constraint_ids().size());
  for (std::size_t i = 0; i < r.verdicts.size(); ++i) CHECK(r.verdicts[i].id == constraint_ids()[i]);
  CHECK(r.find("no_such_check") == nullptr);
}

TEST_CASE("N = 2205") {
  const auto r = audit(parse_factorization("3^2*5*7^2"));
  CHECK(verdict_of(r, "parity") == Verdict::Pass);
  CHECK(verdict_of(r, "euler_form") == Verdict::Pass);
  CHECK(verdict_of(r, "touchard") == Verdict::Pass);
  CHECK(verdict_of(r, "steuerwald") == Verdict::Pass);
  CHECK(verdict_of(r, "min_distinct") == Verdict::Fail);
  CHECK(r.find("min_distinct")->detail == "r = 3 < 9");
  CHECK(verdict_of(r, "min_distinct_no3") == Verdict::NotApplicable);
  CHECK(verdict_of(r, "min_distinct_no3no5") == Verdict::NotApplicable);
  CHECK(verdict_of(r, "min_distinct_no357") == Verdict::NotApplicable);
  CHECK(verdict_of(r, "hare_omega") == Verdict::Fail);
  CHECK(verdict_of(r, "brent_size") == Verdict::Fail);
  CHECK(verdict_of(r, "nielsen_size") == Verdict::Pass);
  CHECK(verdict_of(r, "perfect_exact") == Verdict::Fail);
  CHECK(r.find("perfect_exact")->detail == "sigma(N) = 4446 != 2N = 4410");
  CHECK(r.find("touchard")->detail.find("N mod 36 = 9") != std::string::npos);
  CHECK(r.find("euler_form")->detail.find("P = 5") != std::string::npos);
  CHECK(r.find("euler_form")->detail.find("Q = 3*7") != std::string::npos);
  CHECK(r.overall == Overall::Refuted);

  const std::string text = explain(r);
  CHECK(text.find("FAIL min_distinct: r = 3 < 9\n") != std::string::npos);
  CHECK(text.find("candidate: 3^2*5*7^2\n") == 0);
  CHECK(text.find("overall: Refuted\n") != std::string::npos);
}

TEST_CASE("simple refutations") {
  const auto even = audit(parse_factorization("2^2*7"));
  CHECK(verdict_of(even, "parity") == Verdict::Fail);
  CHECK(verdict_of(even, "perfect_exact") == Verdict::Pass);
  CHECK(even.overall == Overall::Refuted);

  const auto square = audit(parse_factorization("3^2*5^2*7^2"));
  CHECK(verdict_of(square, "euler_form") == Verdict::Fail);
  CHECK(square.overall == Overall::Refuted);

  const auto squarefree = audit(parse_factorization("3*5*7"));
  CHECK(verdict_of(squarefree, "steuerwald") == Verdict::Fail);
  CHECK(verdict_of(squarefree, "euler_form") == Verdict::Fail);

  const auto one = audit(Factorization{});
  CHECK(verdict_of(one, "parity") == Verdict::Fail);
  CHECK(one.overall == Overall::Refuted);
}

TEST_CASE("guarded minimum counts") {
  const auto no3 = audit(parse_factorization("5*7^2"));
  CHECK(verdict_of(no3, "min_distinct_no3") == Verdict::Fail);
  CHECK(verdict_of(no3, "min_distinct_no3no5") == Verdict::NotApplicable);

  // 3 | N but 5 does not: the 3-and-5-free guard is not met.
  const auto no5 = audit(parse_factorization("3^2*7*11"));
  CHECK(verdict_of(no5, "min_distinct_no3") == Verdict::NotApplicable);
  CHECK(verdict_of(no5, "min_distinct_no3no5") == Verdict::NotApplicable);

  const auto none = audit(parse_factorization("11^2*13"));
  CHECK(verdict_of(none, "min_distinct_no3") == Verdict::Fail);
  CHECK(verdict_of(none, "min_distinct_no3no5") == Verdict::Fail);
  CHECK(verdict_of(none, "min_distinct_no357") == Verdict::Fail);
  CHECK(none.find("min_distinct_no357")->detail == "r = 2 < 27");
}

TEST_CASE("size checks never materialize huge N") {
  // Omega far above 75 and N around 2^(10^7): evaluation must stay symbolic.
  const auto f = parse_factorization("3^2*5*7^2*1000000007^300000");
  AuditOptions o;
  o.max_exact_digits = 1000;
  const auto r = audit(f, o);
  CHECK(verdict_of(r, "brent_size") == Verdict::Pass);
  CHECK(verdict_of(r, "nielsen_size") == Verdict::Fail);
  CHECK(verdict_of(r, "hare_omega") == Verdict::Pass);
  CHECK(verdict_of(r, "cohen_component") == Verdict::Pass);
  CHECK(verdict_of(r, "perfect_exact") == Verdict::Undecided);
  CHECK(r.overall == Overall::Refuted);
}

TEST_CASE("largest three, kishore, perisastri") {
  const auto r = audit(parse_factorization("3^2*5*101^2*10007^2*100000007^2"));
  CHECK(verdict_of(r, "largest_three") == Verdict::Pass);
  CHECK(verdict_of(r, "perisastri_smallest") == Verdict::Pass);
  CHECK(r.find("perisastri_smallest")->detail == "3*p_1 = 9 <= 2r+9 = 19");

  const auto low = audit(parse_factorization("97*10007*100000007"));
  CHECK(verdict_of(low, "largest_three") == Verdict::Fail);
  CHECK(low.find("largest_three")->detail.find("p_(r-2) = 97 <= 10^2") != std::string::npos);

  const auto two = audit(parse_factorization("3*5"));
  CHECK(two.find("largest_three")->detail.find("p_(r-2) n/a (r = 2)") != std::string::npos);
  CHECK(verdict_of(two, "kishore") == Verdict::Fail);
  CHECK(two.find("kishore")->detail == "p_2 = 5 >= 4");
  CHECK(verdict_of(audit(parse_factorization("3^2*5*7*11")), "kishore") == Verdict::Pass);
}

TEST_CASE("every small or even candidate is refuted") {
  std::mt19937_64 rng(31);
  std::vector<std::uint32_t> pool;
  for (auto p : primes_up_to(2000)) pool.push_back(p);
  for (int trial = 0; trial < 400; ++trial) {
    const auto f = random_candidate(rng, pool, true);
    const auto r = audit(f);
    CHECK(r.overall == Overall::Refuted);
    if (f[0].prime == 2) CHECK(verdict_of(r, "parity") == Verdict::Fail);
    // value(f) stays far below 10^300 here.
    CHECK(verdict_of(r, "brent_size") == Verdict::Fail);
  }
}

TEST_CASE("thm3_recip passing implies thm2_recip passing when r >= 2") {
  std::mt19937_64 rng(32);
  std::vector<std::uint32_t> pool;
  for (auto p : primes_up_to(5000)) pool.push_back(p);
  pool.erase(pool.begin());
  int thm3_passes = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto f = random_candidate(rng, pool, false);
    if (f.size() < 2) continue;
    const auto r = audit(f);
    if (verdict_of(r, "thm3_recip") == Verdict::Pass) {
      ++thm3_passes;
      CHECK(verdict_of(r, "thm2_recip") == Verdict::Pass);
    }
  }
  CHECK(thm3_passes > 0);
}

TEST_CASE("combine: more checks never turn Refuted into Viable") {
  std::mt19937_64 rng(33);
  const Verdict all[] = {Verdict::Pass, Verdict::Fail, Verdict::NotApplicable, Verdict::Undecided};
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<ConstraintVerdict> vs;
    const std::size_t n = rng() % 8;
    for (std::size_t i = 0; i < n; ++i) vs.push_back({"c" + std::to_string(i), all[rng() % 4], ""});
    const Overall before = combine(vs);
    vs.push_back({"extra", all[rng() % 4], ""});
    const Overall after = combine(vs);
    if (before == Overall::Refuted) CHECK(after == Overall::Refuted);
    if (after == Overall::Viable) CHECK(before == Overall::Viable);
  }
  CHECK(combine({}) == Overall::Viable);
  CHECK(combine({{"a", Verdict::Pass, ""}, {"b", Verdict::NotApplicable, ""}}) == Overall::Viable);
  CHECK(combine({{"a", Verdict::Undecided, ""}, {"b", Verdict::Pass, ""}}) == Overall::Undecided);
  CHECK(combine({{"a", Verdict::Undecided, ""}, {"b", Verdict::Fail, ""}}) == Overall::Refuted);
}

TEST_CASE("explain and JSON") {
  ConstraintReport viable;
  viable.candidate = parse_factorization("3");
  viable.verdicts = {{"parity", Verdict::Pass, "N is odd and N > 1"}, {"kishore", Verdict::NotApplicable, "r = 1 < 2"}};
  viable.overall = combine(viable.verdicts);
  const std::string text = explain(viable);
  CHECK(text == "candidate: 3\nPASS parity: N is odd and N > 1\nN/A kishore: r = 1 < 2\noverall: Viable\n");

  const auto j = to_json(audit(parse_factorization("3^2*5*7^2")));
  CHECK(j["candidate"] == "3^2*5*7^2");
  CHECK(j["overall"] == "Refuted");
  CHECK(j["verdicts"].size() == constraint_ids().size());
  CHECK(j["verdicts"][4]["id"] == "min_distinct");
  CHECK(j["verdicts"][4]["verdict"] == "Fail");
  CHECK(nlohmann::json::parse(j.dump(2)).dump(2) == j.dump(2));
}

TEST_CASE("alpha and beta bound checks") {
  // r = 3: bounds are about 56.96 and 11.54.
  const auto r = audit(parse_factorization("3^2*5*7^2"));
  CHECK(verdict_of(r, "thm1_alpha") == Verdict::Pass);
  CHECK(verdict_of(r, "thm1_beta") == Verdict::Pass);
  CHECK(r.find("thm1_alpha")->detail.find("alpha(N) = 105 > ") == 0);

  const auto low = audit(parse_factorization("3*5^2*7"));
  CHECK(verdict_of(low, "thm1_alpha") == Verdict::Pass);
  const auto tight = audit(parse_factorization("3^2*5"));
  CHECK(verdict_of(tight, "thm1_alpha") == Verdict::Pass);  // 15 > 5.83
  CHECK(verdict_of(tight, "thm1_beta") == Verdict::Pass);   // 8 > 4.83
  const auto single = audit(parse_factorization("3^4"));
  CHECK(verdict_of(single, "thm1_alpha") == Verdict::Pass);  // r = 1: 3 > 1
  // r = 6: 255255 < 2.96e5.
  const auto six = audit(parse_factorization("3^2*5*7*11*13*17"));
  CHECK(verdict_of(six, "thm1_alpha") == Verdict::Fail);
  CHECK(six.find("thm1_alpha")->detail.find("alpha(N) = 255255 < ") == 0);
}
