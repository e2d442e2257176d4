#include <random>

#include "doctest.h"
#include "optimist/rational.hpp"

using namespace optimist;

namespace {

// Smallest distance from v to any fraction with denominator <= n.
Rational closest_distance(const Rational& v, long n) {
  Rational best = -1;
  for (long q = 1; q <= n; ++q) {
    mpz_class p_floor;
    mpz_fdiv_q(p_floor.get_mpz_t(), mpz_class(v.get_num() * q).get_mpz_t(), v.get_den().get_mpz_t());
    for (int d = 0; d <= 1; ++d) {
      Rational cand(p_floor + d, q);
      cand.canonicalize();
      Rational dist = abs(cand - v);
      if (best < 0 || dist < best) best = dist;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("limit_denominator reproduces reference values") {
  // Reference outputs of CPython's fractions.Fraction.limit_denominator.
  struct Case {
    Rational in;
    long n;
    Rational out;
  };
  const std::vector<Case> cases = {
      {Rational(355, 113), 10, Rational(22, 7)},  {Rational(1, 3), 10, Rational(1, 3)},
      {Rational(3, 20), 10, Rational(1, 7)},      {Rational(-3, 20), 10, Rational(-1, 7)},
      {Rational(1, 4), 2, Rational(0)},           {Rational(3, 4), 2, Rational(1)},
      {Rational(5, 12), 5, Rational(2, 5)},       {Rational(7, 2), 1, Rational(3)},
      {Rational(-7, 2), 1, Rational(-4)},         {Rational(13, 100), 10, Rational(1, 8)},
      {Rational(999, 1000), 10, Rational(1)},     {Rational(1, 1000), 10, Rational(0)},
  };
  for (const auto& c : cases) {
    CAPTURE(to_string(c.in));
    CHECK(limit_denominator(c.in, c.n) == c.out);
  }
}

TEST_CASE("limit_denominator returns a closest fraction within the bound") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-5000, 5000), den(1, 997), lim(1, 12);
  for (int i = 0; i < 500; ++i) {
    Rational v(num(rng), den(rng));
    v.canonicalize();
    long n = lim(rng);
    Rational r = limit_denominator(v, n);
    CAPTURE(to_string(v));
    CHECK(r.get_den() <= n);
    CHECK(abs(r - v) == closest_distance(v, n));
    if (v.get_den() <= n) CHECK(r == v);
  }
}

TEST_CASE("limit_denominator rejects a non-positive bound") {
  CHECK_THROWS(limit_denominator(Rational(1, 3), 0));
}

TEST_CASE("rational text round trip") {
  CHECK(to_string(Rational(3)) == "3");
  CHECK(to_string(Rational(-1, 2)) == "-1/2");
  CHECK(parse_rational("-7/3") == Rational(-7, 3));
  CHECK(parse_rational("4/2") == Rational(2));
  CHECK(parse_rational("12") == Rational(12));
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK(is_integer(Rational(6, 3)));
  CHECK_FALSE(is_integer(Rational(1, 3)));
}
