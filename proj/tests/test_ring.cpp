#include <random>
#include <set>

#include "coxreg/ring.hpp"
#include "doctest.h"

using namespace coxreg;

TEST_CASE("product space structure") {
  ProductSpace x({2, 2});
  CHECK(x.dim() == 4);
  CHECK(x.num_vars() == 6);
  CHECK(x.canonical_degree() == MultiDegree{-3, -3});
  CHECK(x.irrelevant_generators().size() == 9);
  CHECK(x.variable_name(4) == "y1");
  CHECK(x.variable_index("y2") == 5);
  CHECK_FALSE(x.variable_index("y3").has_value());
  CHECK(x.to_string() == "P(2,2)");
  CHECK(ProductSpace::parse("P(1, 2)") == ProductSpace({1, 2}));
  ProductSpace four({1, 1, 1, 1});
  CHECK(four.variable_name(6) == "w4_0");
  CHECK(four.variable_index("w4_1") == 7);
  CHECK(ProductSpace({1, 3, 2}).irrelevant_generators().size() == 24);
  CHECK_THROWS(ProductSpace({0}));
  CHECK_THROWS(ProductSpace(std::vector<int>{}));
}

TEST_CASE("parse_polynomial examples") {
  Ring r(ProductSpace({2, 2}), Field::prime());
  Polynomial f0 = parse_polynomial(r, "x1^2 - x0*x2");
  CHECK(homogeneous_degree(r, f0) == MultiDegree{2, 0});
  CHECK(parse_polynomial(r, "0").is_zero());
  Polynomial f2 = parse_polynomial(r, "x2*y0*y1 - x1*y2^2");
  CHECK(homogeneous_degree(r, f2) == MultiDegree{1, 2});
  CHECK_FALSE(homogeneous_degree(r, parse_polynomial(r, "x0 + y0")).has_value());
  CHECK(parse_polynomial(r, "x0 - x0").is_zero());
  CHECK(parse_polynomial(r, "2*x0*3").leading().coef == r.field().from_int(6));
  CHECK_THROWS_AS(parse_polynomial(r, "x0 + q1"), ParseError);
  CHECK_THROWS_AS(parse_polynomial(r, "x0 +"), ParseError);
  CHECK_THROWS_AS(parse_polynomial(r, "x0 ) y0"), ParseError);
  try {
    parse_polynomial(r, "x0 + q1");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("degree slices") {
  ProductSpace p22({2, 2});
  CHECK(degree_slice_dimension(p22, {1, 2}) == 18);
  CHECK(degree_slice_dimension(p22, {-1, 3}) == 0);
  for (int d = 0; d < 6; ++d) CHECK(degree_slice_dimension(ProductSpace({1}), {d}) == static_cast<std::uint64_t>(d + 1));

  Ring p1(ProductSpace({1}), Field::prime());
  auto b = degree_slice_basis(p1, {2});
  REQUIRE(b.size() == 3);
  CHECK(to_string(p1, b[0]) == "x0^2");
  CHECK(to_string(p1, b[1]) == "x0*x1");
  CHECK(to_string(p1, b[2]) == "x1^2");
  CHECK(degree_slice_basis(Ring(ProductSpace({1, 1}), Field::prime()), {1, 1}).size() == 4);
  auto one = degree_slice_basis(Ring(p22, Field::prime()), {0, 0});
  REQUIRE(one.size() == 1);
  CHECK(one[0].is_one());
}

TEST_CASE("slice enumeration matches the closed form") {
  for (auto f : {std::vector<int>{1}, {2}, {1, 1}, {1, 2}, {2, 2}, {1, 1, 1}}) {
    Ring r{ProductSpace(f), Field::prime()};
    for (int a = 0; a < 4; ++a)
      for (const MultiDegree& u : compositions(f.size(), a)) {
        auto basis = degree_slice_basis(r, u);
        CHECK(basis.size() == degree_slice_dimension(r.space(), u));
        std::set<std::string> seen;
        for (const Monomial& m : basis) {
          CHECK(r.degree(m) == u);
          seen.insert(to_string(r, m));
        }
        CHECK(seen.size() == basis.size());
      }
  }
}

namespace {

Monomial random_monomial(std::mt19937& rng, int vars, int maxe) {
  std::uniform_int_distribution<int> e(0, maxe);
  Monomial m;
  for (int v = 0; v < vars; ++v) m = m * Monomial::variable(v, e(rng));
  return m;
}

Polynomial random_poly(const Ring& r, std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-9, 9), n(0, 5);
  std::vector<Term> terms;
  int count = n(rng);
  for (int i = 0; i < count; ++i) terms.push_back(Term{random_monomial(rng, r.num_vars(), 3), 0, r.field().from_int(c(rng))});
  return make_polynomial(TermOrder(r), std::move(terms));
}

}  // namespace

TEST_CASE("print/parse round trip") {
  std::mt19937 rng(5);
  for (Field k : {Field::prime(), Field::rationals()}) {
    Ring r(ProductSpace({2, 1, 1, 1}), k);
    for (int trial = 0; trial < 200; ++trial) {
      Polynomial f = random_poly(r, rng);
      CHECK(parse_polynomial(r, to_string(r, f)) == f);
    }
  }
  Ring q(ProductSpace({1}), Field::rationals());
  Polynomial f = parse_polynomial(q, "3/4*x0 - 1/2*x1");
  CHECK(to_string(q, f) == "3/4*x0 - 1/2*x1");
}

TEST_CASE("monomial orders are multiplicative") {
  std::mt19937 rng(9);
  for (int aux : {0, 1}) {
    Ring r(ProductSpace({2, 2}), Field::prime(), aux);
    for (int trial = 0; trial < 500; ++trial) {
      Monomial a = random_monomial(rng, r.num_vars(), 3);
      Monomial b = random_monomial(rng, r.num_vars(), 3);
      Monomial m = random_monomial(rng, r.num_vars(), 2);
      int c = r.compare(a, b);
      CHECK(c == -r.compare(b, a));
      CHECK(r.compare(a * m, b * m) == c);
      if (!m.is_one()) CHECK(r.compare(a * m, a) > 0);
    }
  }
}

TEST_CASE("elimination order ranks the auxiliary variable first") {
  Ring r(ProductSpace({1}), Field::prime(), 1);
  Monomial t = Monomial::variable(2);
  Monomial big = power(Monomial::variable(0), 10);
  CHECK(r.compare(t, big) > 0);
  CHECK(r.involves_aux(t));
  CHECK(r.variable_name(2) == "t");
}

TEST_CASE("polynomial arithmetic") {
  Ring r(ProductSpace({1, 1}), Field::rationals());
  TermOrder ord(r);
  Polynomial f = parse_polynomial(r, "x0*y1 - x1*y0");
  Polynomial g = mul(ord, f, f);
  CHECK(g == parse_polynomial(r, "x0^2*y1^2 - 2*x0*x1*y0*y1 + x1^2*y0^2"));
  CHECK(homogeneous_degree(r, pow(ord, f, 3)) == MultiDegree{3, 3});
  CHECK(sub(ord, g, g).is_zero());
  CHECK(add(ord, f, negate(r.field(), f)).is_zero());
  Polynomial h = sub_mul(ord, g, r.field().one(), f.leading().mon, f);
  CHECK(h == sub(ord, g, mul(ord, monomial_poly(r, f.leading().mon, r.field().one()), f)));
  CHECK_THROWS(power(Monomial::variable(0, 300), 300));
}
