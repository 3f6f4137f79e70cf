#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "opnkit/interval.hpp"
#include "oracles.hpp"

using namespace opn;

TEST_CASE("dyadic normalization and comparison") {
  const Dyadic a(Natural(12), -3);  // 1.5
  CHECK(a.mantissa() == 3);
  CHECK(a.exponent() == -1);
  CHECK(a.to_ratio() == make_ratio(3, 2));
  CHECK(compare(a, Dyadic(Natural(3), -1)) == 0);
  CHECK(compare(a, make_ratio(3, 2)) == 0);
  CHECK(compare(a, make_ratio(8, 5)) < 0);
  CHECK(compare(Dyadic(Natural(-1), 0), Dyadic()) < 0);
  CHECK(compare(Dyadic(Natural(1), 100), Dyadic(Natural(1), -100)) > 0);
}

TEST_CASE("directed rounding brackets the exact value") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 2000; ++trial) {
    const Natural num = Natural(static_cast<unsigned long>(rng() >> 1)) * static_cast<unsigned long>(rng() >> 20) -
                        Natural(static_cast<unsigned long>(rng() >> 2));
    const Natural den = Natural(static_cast<unsigned long>(1 + (rng() >> 3)));
    const Ratio q = make_ratio(num, den);
    const std::size_t bits = 8 + rng() % 120;
    const Dyadic lo = from_ratio(q, bits, Round::Down);
    const Dyadic hi = from_ratio(q, bits, Round::Up);
    CHECK(compare(lo, q) <= 0);
    CHECK(compare(hi, q) >= 0);
    CHECK(lo.bits() <= bits);
    CHECK(hi.bits() <= bits);

    const Dyadic a(num, -static_cast<long>(rng() % 50));
    const Dyadic b(den, static_cast<long>(rng() % 50) - 25);
    for (Round dir : {Round::Down, Round::Up}) {
      const int want = dir == Round::Down ? -1 : 1;
      auto ok = [&](const Dyadic& got, const Ratio& exact) {
        const int c = compare(got, exact);
        return c == 0 || c == want;
      };
      CHECK(ok(add(a, b, bits, dir), a.to_ratio() + b.to_ratio()));
      CHECK(ok(sub(a, b, bits, dir), a.to_ratio() - b.to_ratio()));
      CHECK(ok(mul(a, b, bits, dir), a.to_ratio() * b.to_ratio()));
      CHECK(ok(div(a, b, bits, dir), a.to_ratio() / b.to_ratio()));
    }
  }
  CHECK_THROWS_AS(div(Dyadic(Natural(1)), Dyadic(), 10, Round::Up), std::domain_error);
}

TEST_CASE("integer_root agrees with GMP mpz_root") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 400; ++trial) {
    Natural a;
    mpz_ui_pow_ui(a.get_mpz_t(), 3, 1 + rng() % 400);
    a += static_cast<unsigned long>(rng() % 1000);
    const unsigned long n = 1 + rng() % 40;
    Natural expected;
    mpz_root(expected.get_mpz_t(), a.get_mpz_t(), n);
    CHECK(integer_root(a, n) == expected);
  }
  CHECK(integer_root(Natural(0), 3) == 0);
  CHECK(integer_root(Natural(1), 3) == 1);
  CHECK(integer_root(Natural(7), 3) == 1);
  CHECK(integer_root(Natural(8), 3) == 2);
  CHECK(integer_root(Natural(26), 3) == 2);
  CHECK(integer_root(Natural(27), 3) == 3);

  // Very high degree on a multi-megabit argument.
  Natural big;
  mpz_ui_pow_ui(big.get_mpz_t(), 2, 10000 * 300 + 1);
  Natural expected;
  mpz_root(expected.get_mpz_t(), big.get_mpz_t(), 10000);
  CHECK(integer_root(big, 10000) == expected);

  CHECK_THROWS_AS(integer_root(Natural(-8), 3), std::domain_error);
  CHECK_THROWS_AS(integer_root(Natural(8), 0), std::domain_error);
}

TEST_CASE("root_enclosure contains the root and is exact on perfect powers") {
  const Interval sqrt2 = root_enclosure(2, 2, 64);
  CHECK(compare(pow(sqrt2, 2).lo(), Ratio(2)) <= 0);
  CHECK(compare(pow(sqrt2, 2).hi(), Ratio(2)) >= 0);
  CHECK(sqrt2.width() == make_ratio(1, Natural(1) << 64));

  const Interval cube = root_enclosure(Natural(1) << 30, 3, 40);
  CHECK(cube.is_point());
  CHECK(cube.lo().to_ratio() == 1024);
}

TEST_CASE("interval arithmetic encloses exact rational results") {
  std::mt19937_64 rng(9);
  auto random_ratio = [&] {
    return make_ratio(Natural(static_cast<unsigned long>(rng() % 100000)) - 50000,
                      Natural(static_cast<unsigned long>(1 + rng() % 9999)));
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const Ratio x = random_ratio(), y = random_ratio();
    const std::size_t bits = 16 + rng() % 100;
    const Interval a = Interval::enclose(x, bits), b = Interval::enclose(y, bits);
    CHECK((a + b).contains(x + y));
    CHECK((a - b).contains(x - y));
    CHECK((a * b).contains(x * y));
    if (y != 0) CHECK((a / b).contains(x / y));
    CHECK(pow(a, 5).contains(x * x * x * x * x));
  }
  CHECK_THROWS_AS(Interval::point(1, 10) / Interval(Dyadic(Natural(-1)), Dyadic(Natural(1)), 10), std::domain_error);
  CHECK_THROWS_AS(Interval(Dyadic(Natural(2)), Dyadic(Natural(1)), 10), std::invalid_argument);
}

TEST_CASE("to_decimal rounds outward") {
  const Dyadic third_lo = from_ratio(make_ratio(1, 3), 100, Round::Down);
  const Dyadic third_hi = from_ratio(make_ratio(1, 3), 100, Round::Up);
  CHECK(to_decimal(third_lo, 5, Round::Down) == "3.3333e-01");
  CHECK(to_decimal(third_hi, 5, Round::Up) == "3.3334e-01");
  CHECK(to_decimal(Dyadic(Natural(1000)), 3, Round::Down) == "1.00e+03");
  CHECK(to_decimal(Dyadic(Natural(1000)), 3, Round::Up) == "1.00e+03");
  CHECK(to_decimal(Dyadic(Natural(999)), 2, Round::Up) == "1.0e+03");
  CHECK(to_decimal(Dyadic(Natural(999)), 2, Round::Down) == "9.9e+02");
  CHECK(to_decimal(Dyadic(Natural(-15), -1), 2, Round::Down) == "-7.5e+00");
  CHECK(to_decimal(Dyadic(Natural(-1), -2), 1, Round::Up) == "-2e-01");
  CHECK(to_decimal(Dyadic(), 3, Round::Up) == "0.00e+00");

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const Dyadic x(Natural(static_cast<unsigned long>(rng())) - Natural(static_cast<unsigned long>(rng())),
                   static_cast<long>(rng() % 400) - 200);
    const std::size_t digits = 1 + rng() % 40;
    const Ratio down = parse_decimal(to_decimal(x, digits, Round::Down));
    const Ratio up = parse_decimal(to_decimal(x, digits, Round::Up));
    CHECK(compare(x, down) >= 0);
    CHECK(compare(x, up) <= 0);
  }
}

TEST_CASE("parse_decimal") {
  CHECK(parse_decimal("17") == 17);
  CHECK(parse_decimal("-1.25e+03") == -1250);
  CHECK(parse_decimal("2.5E-1") == make_ratio(1, 4));
  CHECK(parse_decimal("0.1") == make_ratio(1, 10));
  CHECK_THROWS_AS(parse_decimal("1e"), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal("1.2.3"), std::invalid_argument);
}

TEST_CASE("digits_to_bits") {
  CHECK(digits_to_bits(50) == 175);
  CHECK(digits_to_bits(1) == 12);
}
