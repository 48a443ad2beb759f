#include <random>

#include "coxreg/arith.hpp"
#include "doctest.h"

using namespace coxreg;

TEST_CASE("binomial values") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(60, 30) == BigInt("118264581564861424"));
}

TEST_CASE("binomial_poly agrees with binomial and continues polynomially") {
  for (int n = 0; n < 12; ++n)
    for (int k = 0; k <= n; ++k) CHECK(binomial_poly(n, static_cast<std::uint64_t>(k)) == binomial(n, k));
  // C(d + 1, 1) at d = -3 is -2: chi(O(-3)) on P^1
  CHECK(binomial_poly(-2, 1) == -2);
  // chi(O(-4)) on P^2 is C(-2, 2) = 3
  CHECK(binomial_poly(-2, 2) == 3);
}

TEST_CASE("quadext_sign") {
  CHECK(quadext_sign(QuadExt(2, -1, 6)) == -1);
  CHECK(quadext_sign(QuadExt(0, 0, 6)) == 0);
  CHECK(quadext_sign(QuadExt(2, Rational(2, 3), 6)) == 1);
  CHECK(quadext_sign(QuadExt(-3, 1, 6)) == -1);
  CHECK(quadext_sign(QuadExt(3, -1, 6)) == 1);
  CHECK(quadext_sign(QuadExt(-2, 1, 6)) == 1);
}

TEST_CASE("quadext_sign is odd on random samples") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
  for (int trial = 0; trial < 500; ++trial) {
    QuadExt x(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), 6);
    if (x.is_zero()) continue;
    CHECK(quadext_sign(x) * quadext_sign(-x) == -1);
    CHECK((quadext_sign(x) > 0) == (x.approx() > 0));
  }
}

TEST_CASE("quadext arithmetic") {
  QuadExt s(0, 1, 6);
  CHECK(s * s == QuadExt::rational(6, 6));
  QuadExt x(2, -1, 6);
  CHECK((x / x) == QuadExt::rational(1, 6));
  CHECK((x * x.conjugate()) == QuadExt::rational(-2, 6));
  CHECK_THROWS_AS(QuadExt(1, 1, 8), ArithmeticError);
  CHECK_THROWS_AS(x / QuadExt(0, 0, 6), ArithmeticError);
}

TEST_CASE("parse_quadext") {
  CHECK(parse_quadext("2", 6) == QuadExt::rational(2, 6));
  CHECK(parse_quadext("-3/4", 6) == QuadExt::rational(Rational(-3, 4), 6));
  CHECK(parse_quadext("sqrt(6)", 6) == QuadExt(0, 1, 6));
  CHECK(parse_quadext("2-sqrt(6)", 6) == QuadExt(2, -1, 6));
  CHECK(parse_quadext("2+4/sqrt(6)", 6) == QuadExt(2, Rational(2, 3), 6));
  CHECK(parse_quadext("1/3*sqrt(6)", 6) == QuadExt(0, Rational(1, 3), 6));
  CHECK(parse_quadext(" 1 + 2*sqrt(6) ", 6) == QuadExt(1, 2, 6));
  CHECK_THROWS_AS(parse_quadext("sqrt(5)", 6), ArithmeticError);
  CHECK_THROWS_AS(parse_quadext("2 3", 6), ArithmeticError);
}

namespace {

void field_axioms(const Field& k, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-1000, 1000), den(1, 50);
  auto draw = [&] {
    return k.is_prime_field() ? k.from_int(d(rng)) : k.from_rational(Rational(d(rng), den(rng)));
  };
  for (int trial = 0; trial < 300; ++trial) {
    Scalar a = draw(), b = draw(), c = draw();
    CHECK(k.add(k.add(a, b), c) == k.add(a, k.add(b, c)));
    CHECK(k.mul(k.mul(a, b), c) == k.mul(a, k.mul(b, c)));
    CHECK(k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c)));
    CHECK(k.add(a, k.neg(a)) == k.zero());
    CHECK(k.sub(a, b) == k.add(a, k.neg(b)));
    if (!k.is_zero(a)) CHECK(k.is_one(k.mul(a, k.inv(a))));
  }
}

}  // namespace

TEST_CASE("field axioms on random samples") {
  std::mt19937 rng(11);
  field_axioms(Field::prime(), rng);
  field_axioms(Field::prime(7), rng);
  field_axioms(Field::rationals(), rng);
}

TEST_CASE("prime field representation") {
  Field k = Field::prime();
  CHECK(k.characteristic() == 32003u);
  CHECK(k.from_int(-1).residue() == 32002u);
  CHECK(k.to_string(k.from_int(-5)) == "-5");
  CHECK(k.from_rational(Rational(1, 2)) == k.inv(k.from_int(2)));
  CHECK_THROWS_AS(Field::prime(15), ArithmeticError);
  CHECK_THROWS_AS(Field::prime(2), ArithmeticError);
  CHECK_THROWS_AS(k.inv(k.zero()), ArithmeticError);
  CHECK_THROWS_AS(k.from_rational(Rational(1, 32003)), ArithmeticError);
}

TEST_CASE("rationals stay canonical") {
  Field q = Field::rationals();
  Scalar x = q.from_rational(Rational(4, -6));
  CHECK(x.rational().get_num() == -2);
  CHECK(x.rational().get_den() == 3);
  CHECK(q.to_string(x) == "-2/3");
}
