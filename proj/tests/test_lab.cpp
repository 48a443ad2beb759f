#include <random>

#include "coxreg/cone.hpp"
#include "coxreg/lab.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace coxreg;
using coxreg::testing::curve_generators;

namespace {

RingPtr ring_of(std::vector<int> f, Field k = Field::prime()) { return make_ring(ProductSpace(std::move(f)), k); }
MultiDegree md(std::initializer_list<int> c) { return MultiDegree(c); }

CohomologyEngine& engine() {
  static CohomologyEngine e;
  return e;
}

std::vector<Divisor> divisors(const Ring& r, const std::vector<Polynomial>& forms) {
  std::vector<Divisor> out;
  for (const Polynomial& f : forms) out.push_back(Divisor::of_form(r, f));
  return out;
}

std::vector<MultiDegree> curve_degrees(bool with_f0) {
  std::vector<MultiDegree> d;
  if (with_f0) d.push_back(md({2, 0}));
  d.push_back(md({0, 2}));
  for (int k = 0; k < 4; ++k) d.push_back(md({1, 2}));
  return d;
}

}  // namespace

TEST_CASE("nef and big") {
  CHECK(is_nef(md({0, 3})));
  CHECK_FALSE(is_big_nef(md({0, 3})));
  CHECK(is_big_nef(md({1, 1})));
  CHECK_FALSE(is_nef(md({-1, 2})));
  CHECK_FALSE(is_big_nef(md({-1, 2})));
}

TEST_CASE("divisors") {
  auto r = ring_of({2, 2});
  Divisor d = Divisor::of_form(*r, parse_polynomial(*r, "x0*y1 + x2*y2"));
  CHECK(d.degree == md({1, 1}));
  Divisor bad{md({2, 1}), parse_polynomial(*r, "x0*y1")};
  CHECK_THROWS_AS(bad.validate(*r), std::invalid_argument);
  CHECK_THROWS_AS(Divisor::of_form(*r, parse_polynomial(*r, "x0 + y0")), std::invalid_argument);
  Divisor no_form{md({2, 1}), std::nullopt};
  CHECK_NOTHROW(no_form.validate(*r));
}

TEST_CASE("theorem hypothesis on a point of P2") {
  auto p2 = ring_of({2});
  auto gens = divisors(*p2, {parse_polynomial(*p2, "x0"), parse_polynomial(*p2, "x1")});
  TheoremMainResult ok = check_theorem_main(engine(), p2, gens, 2, 0, md({3}));
  CHECK(ok.hypothesis.holds);
  CHECK(ok.hypothesis.checked == 2);
  CHECK(ok.twist == md({0}));
  CHECK(ok.higher == std::vector<std::uint64_t>{0, 0});
  CHECK(ok.verified);

  TheoremMainResult bad = check_theorem_main(engine(), p2, gens, 2, 0, md({2}));
  CHECK_FALSE(bad.hypothesis.holds);
  REQUIRE(bad.hypothesis.witnesses.size() == 2);
  CHECK(bad.hypothesis.witnesses[0].subset == std::vector<std::size_t>{0, 1});
  CHECK(bad.hypothesis.witnesses[0].twist == md({0}));
  CHECK_FALSE(bad.verified);
  CHECK(bad.higher.empty());

  CHECK_THROWS_AS(check_theorem_main(engine(), p2, gens, 1, 0, md({3})), CodimensionMismatch);

  // m = 1: 3 - 2 - 1 = 0 fails, 4 - 2 - 1 = 1 holds
  CHECK_FALSE(theorem_main_hypothesis({md({1}), md({1})}, 2, 1, md({3})).holds);
  TheoremMainResult sq = check_theorem_main(engine(), p2, gens, 2, 1, md({4}));
  CHECK(sq.hypothesis.holds);
  CHECK(sq.verified);
  // Below the hypothesis the square of a point fails: h^1(I_p^2(-1)) = h^0(O_{2p}) = 3.
  TheoremMainResult low = check_theorem_main(engine(), p2, gens, 2, 1, md({2}), true);
  CHECK(low.higher == std::vector<std::uint64_t>{3, 0});
}

TEST_CASE("theorem hypothesis counts indexed subsets") {
  std::vector<MultiDegree> d(4, md({1, 1}));
  HypothesisReport r = theorem_main_hypothesis(d, 2, 0, md({3, 3}));
  CHECK(r.checked == 12);
  CHECK(r.holds);
  r = theorem_main_hypothesis(d, 2, 1, md({3, 3}));
  CHECK(r.witnesses.size() == 12);
}

TEST_CASE("theorem on the curve") {
  auto r = ring_of({2, 2});
  auto gens = divisors(*r, curve_generators(*r, true));
  TheoremMainResult res = check_theorem_main(engine(), r, gens, 3, 0, md({7, 9}), false, 4);
  CHECK(res.hypothesis.holds);
  CHECK(res.twist == md({4, 6}));
  CHECK(res.verified);
}

TEST_CASE("regularity region") {
  ProductSpace p22({2, 2});
  MultiDegree k = p22.canonical_degree();
  RegionReport a = regularity_region_predicted(p22, curve_degrees(true), 1, md({4, 6}) - k, RegionPath::Remark);
  CHECK(a.holds);
  CHECK(a.structure_regular);
  RegionReport b = regularity_region_predicted(p22, curve_degrees(false), 1, md({3, 6}) - k, RegionPath::Remark);
  CHECK(b.holds);
  RegionReport c = regularity_region_predicted(p22, curve_degrees(true), 1, md({3, 6}) - k, RegionPath::Remark);
  CHECK_FALSE(c.holds);
  bool found = false;
  for (const RegionWitness& w : c.witnesses)
    if (w.subset == std::vector<std::size_t>{0, 2, 3} && w.u == md({2, 0})) {
      found = true;
      CHECK(w.twist == md({0, 5}));
    }
  CHECK(found);
  CHECK_THROWS_AS(regularity_region_predicted(p22, curve_degrees(true), 1, md({7, 9}), RegionPath::Corollary),
                  std::invalid_argument);
  // O_X is not (K + L)-regular when K + L = (-1, 0): h^2(O(-3, 0)) = 1.
  RegionReport d = regularity_region_predicted(p22, curve_degrees(true), 1, md({-1, 0}) - k, RegionPath::Remark);
  CHECK_FALSE(d.structure_regular);
  CHECK_FALSE(d.holds);
}

TEST_CASE("L-regularity of the curve") {
  auto r = ring_of({2, 2});
  Module iy = Module::of_ideal(Ideal(r, curve_generators(*r, true)));
  CHECK(is_L_regular(engine(), iy, md({1, 5}), 4).regular);
  CHECK(is_L_regular(engine(), iy, md({4, 6}), 4).regular);
  // monotone under the shifts re-checked here
  CHECK(is_L_regular(engine(), iy, md({2, 5}), 4).regular);
  CHECK(is_L_regular(engine(), iy, md({1, 6}), 4).regular);
  // sharper than the region: h^1, h^2 of the restriction sequence vanish already at (1,3)
  CHECK(is_L_regular(engine(), iy, md({1, 3}), 4).regular);
  // h^1(I_Y(-1,5)) = h^0(O_Y) in degree 4 on the rational curve = 5
  RegularityReport low = is_L_regular(engine(), iy, md({0, 5}), 4);
  CHECK_FALSE(low.regular);
  REQUIRE(low.violations.size() == 2);
  CHECK(low.violations[0].i == 1);
  CHECK(low.violations[0].u == md({1, 0}));
  CHECK(low.violations[0].dim == 5);

  CHECK(is_L_regular(engine(), Module::structure(r), md({0, 0})).regular);
  CHECK(line_bundle_regular(ProductSpace({2, 2}), md({0, 0}), md({0, 0})).regular);
  RegularityReport neg = line_bundle_regular(ProductSpace({2, 2}), md({0, 0}), md({-1, 0}));
  CHECK_FALSE(neg.regular);
  REQUIRE(neg.violations.size() == 1);
  CHECK(neg.violations[0].i == 2);
  CHECK(neg.violations[0].u == md({2, 0}));
}

TEST_CASE("property: theorem hypothesis implies vanishing") {
  std::mt19937 rng(505);
  const std::vector<std::vector<int>> shapes = {{2}, {1, 1}, {1, 2}, {2, 1}, {3}};
  int ran = 0;
  for (int n = 0; n < 40; ++n) {
    ProductSpace x(shapes[rng() % shapes.size()]);
    RingPtr r = make_ring(x, Field::prime());
    int e = 1 + static_cast<int>(rng() % static_cast<unsigned>(x.dim()));
    std::vector<MultiDegree> d;
    for (int j = 0; j < e; ++j) {
      MultiDegree a(x.num_factors());
      for (std::size_t k = 0; k < a.size(); ++k) a[k] = 1 + static_cast<int>(rng() % 2);
      d.push_back(a);
    }
    int m = static_cast<int>(rng() % 2);
    MultiDegree l(x.num_factors());
    for (std::size_t k = 0; k < l.size(); ++k) l[k] = 2 + static_cast<int>(rng() % 7);
    auto gens = divisors(*r, generic_forms(r, d, rng()));
    TheoremMainResult res = check_theorem_main(engine(), r, gens, e, m, l);
    if (res.hypothesis.holds) {
      ++ran;
      CHECK(res.verified);
    }
  }
  CHECK(ran >= 5);
}

TEST_CASE("property: predicted region implies regularity") {
  std::mt19937 rng(606);
  const std::vector<std::vector<int>> shapes = {{2}, {1, 1}, {1, 2}, {2, 1}};
  int ran = 0;
  for (int n = 0; n < 60; ++n) {
    ProductSpace x(shapes[rng() % shapes.size()]);
    RingPtr r = make_ring(x, Field::prime());
    int e = 1 + static_cast<int>(rng() % static_cast<unsigned>(x.dim()));
    bool positive = n % 2 == 0;
    std::vector<MultiDegree> d;
    for (int j = 0; j < e; ++j) {
      MultiDegree a(x.num_factors());
      for (std::size_t k = 0; k < a.size(); ++k) a[k] = (positive ? 1 : 0) + static_cast<int>(rng() % 2);
      if (a.total() == 0) a[0] = 1;
      d.push_back(a);
    }
    MultiDegree l(x.num_factors());
    for (std::size_t k = 0; k < l.size(); ++k) l[k] = static_cast<int>(rng() % 7);
    bool all_positive = true;
    for (const MultiDegree& a : d) all_positive = all_positive && a.all_at_least(1);
    RegionPath path = all_positive ? RegionPath::Corollary : RegionPath::Remark;
    RegionReport region = regularity_region_predicted(x, d, x.dim() - e, l, path);
    if (!region.holds) continue;
    auto forms = generic_forms(r, d, rng());
    Ideal y(r, forms);
    if (codimension(engine().saturation(y)) != e) continue;
    ++ran;
    CHECK(is_L_regular(engine(), Module::of_ideal(y), x.canonical_degree() + l).regular);
  }
  CHECK(ran >= 10);
}

TEST_CASE("sharpness witnesses") {
  ProductSpace p22({2, 2});
  SharpnessResult a = sharpness_witness(p22, {md({1, 1})}, md({0, 3}));
  CHECK(a.chop.valid);
  REQUIRE(a.index);
  CHECK(*a.index == 2);
  CHECK(a.dim == 1);
  CHECK(a.predicted == line_bundle_dim(p22, 2, md({-3, 0})));

  SharpnessResult b = sharpness_witness(p22, std::vector<MultiDegree>(3, md({1, 1})), md({0, 3}));
  CHECK(b.chop.valid);
  CHECK_FALSE(b.index);
  REQUIRE(b.h0);
  CHECK(*b.h0 == 1);

  ProductSpace p12({1, 2});
  SharpnessResult c = sharpness_witness(p12, {md({1, 1})}, md({2, 0}));
  CHECK(c.twist == md({1, -2}));
  REQUIRE(c.index);
  CHECK(*c.index == 2);
  CHECK(c.dim == 1);

  CHECK_THROWS_AS(sharpness_witness(p22, {md({1, 1})}, md({1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(sharpness_witness(p22, {md({1, 0})}, md({0, 3})), std::invalid_argument);
  // K + N = (-3, -2) has no cohomology
  CHECK_THROWS_AS(sharpness_witness(p22, {md({1, 1})}, md({0, 1})), std::invalid_argument);
}

TEST_CASE("sharpness agrees with the engine on generic forms") {
  struct Case {
    std::vector<int> x;
    std::vector<MultiDegree> d;
    MultiDegree n;
  };
  std::vector<Case> cases = {{{2, 2}, {md({1, 1})}, md({0, 3})},
                             {{2, 2}, std::vector<MultiDegree>(3, md({1, 1})), md({0, 3})},
                             {{1, 2}, {md({1, 1})}, md({2, 0})},
                             {{1, 2}, {md({1, 1})}, md({0, 3})},
                             {{2, 1}, {md({1, 1}), md({1, 2})}, md({3, 0})}};
  for (const Case& c : cases) {
    ProductSpace x(c.x);
    SharpnessResult s = sharpness_witness(x, c.d, c.n);
    REQUIRE(s.chop.valid);
    if (s.index) CHECK(s.dim == s.predicted);
    auto h = generic_ci_cohomology(engine(), make_ring(x, Field::prime()), c.d, s.twist, 3, 4);
    for (std::size_t i = 0; i < h.size(); ++i)
      if (s.chop.dims[i]) CHECK(*s.chop.dims[i] == h[i]);
  }
}

TEST_CASE("multiplication maps") {
  ProductSpace p1({1});
  auto r = ring_of({1});
  MultiplicationRank q = multiplication_rank(r, md({2}), md({2}));
  CHECK(q.rank == 5);
  CHECK(q.target == 5);
  CHECK(multiplication_rank(r, md({1}), md({1})).rank == 3);
  for (MultMode mode : {MultMode::DirectRank, MultMode::DiagonalVanishing})
    CHECK(multiplication_map_check(engine(), p1, Field::prime(), md({4}), md({4}), mode));
  CHECK_FALSE(multiplication_hypothesis(md({1}), md({4}), {md({1})}));
  CHECK(multiplication_hypothesis(md({2}), md({4}), {md({1})}));
  // Outside the grid the diagonal test is only sufficient: K + L1 = O(-2).
  CHECK(multiplication_map_check(engine(), p1, Field::prime(), md({0}), md({3}), MultMode::DirectRank));
  CHECK_FALSE(multiplication_map_check(engine(), p1, Field::prime(), md({0}), md({3}), MultMode::DiagonalVanishing));
  CHECK_THROWS_AS(multiplication_map_check(engine(), ProductSpace({1, 2}), Field::prime(), md({3, 3}), md({3, 3}),
                                           MultMode::DiagonalVanishing),
                  ScaleGuard);

  auto sq = make_ring(ProductSpace({2}).squared(), Field::prime());
  Ideal diag = diagonal_ideal(sq, 1);
  CHECK(diag.generators().size() == 3);
  CHECK(codimension(diag) == 2);
}

TEST_CASE("property: multiplication modes agree") {
  auto agree = [](const ProductSpace& x, const MultiDegree& l1, const MultiDegree& l2) {
    bool direct = multiplication_map_check(engine(), x, Field::prime(), l1, l2, MultMode::DirectRank);
    bool diag = multiplication_map_check(engine(), x, Field::prime(), l1, l2, MultMode::DiagonalVanishing);
    CHECK_MESSAGE(direct == diag, x.to_string(), l1.to_string(), l2.to_string());
  };
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 6; ++b) agree(ProductSpace({1}), md({a}), md({b}));
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b) agree(ProductSpace({2}), md({a}), md({b}));
  std::mt19937 rng(707);
  for (int n = 0; n < 40; ++n) {
    auto pick = [&] { return static_cast<int>(rng() % 5) + 1; };
    agree(ProductSpace({1, 1}), MultiDegree({pick(), pick()}), MultiDegree({pick(), pick()}));
  }
}

TEST_CASE("Wahl maps") {
  CHECK(wahl_vanishing_check(0, 3, 3).vanishes);
  WahlResult w = wahl_vanishing_check(1, 4, 4);
  CHECK(w.vanishes);
  CHECK(w.twist == md({0, 0}));
  WahlResult f = wahl_vanishing_check(1, 4, 2);
  CHECK_FALSE(f.vanishes);
  CHECK(f.twist == md({0, -2}));
  CHECK(f.h1 == 1);
  for (int m = 0; m <= 3; ++m) CHECK(wahl_reduction_holds(Field::prime(), m, 5));
  CHECK(wahl_reduction_holds(Field::rationals(), 2, 4));
}

TEST_CASE("property: Wahl reduction matches the engine") {
  auto p11 = ring_of({1, 1});
  Ideal diag = diagonal_ideal(p11, 1);
  for (int m = 0; m <= 2; ++m) {
    Module power = Module::of_ideal(ideal_power(diag, m + 1));
    for (int l1 = 0; l1 <= 5; ++l1)
      for (int l2 = 0; l2 <= 5; ++l2)
        CHECK(wahl_vanishing_check(m, l1, l2).h1 == engine().sheaf_cohomology_dim(power, 1, md({l1 - 2, l2 - 2})));
  }
}

namespace {

QuadExt qd(const char* text) { return parse_quadext(text, 6); }

}  // namespace

TEST_CASE("cones over Q(sqrt D)") {
  ConeQD nef({qd("1"), qd("2")}, {qd("1"), qd("2-sqrt(6)")}, {"H", "C"});
  CHECK(cone_contains(nef, {qd("1"), qd("2")}));
  CHECK(cone_contains(nef, {qd("0"), qd("0")}));
  CHECK_FALSE(cone_contains(nef, {qd("0"), qd("1")}));
  CHECK_FALSE(cone_contains(nef, {qd("-1"), qd("-2")}));
  // H^2 = 4, H.C = 4, C^2 = -2: the boundary ray has square zero, H - C does not lie in Nef
  CHECK_FALSE(cone_contains(nef, {qd("1"), qd("-1")}));
  CHECK(cone_contains(nef, {qd("1"), qd("-2/5")}));
  CHECK_FALSE(cone_contains(nef, {qd("1"), qd("-1/2")}));
  CHECK_THROWS_AS(ConeQD({qd("1"), qd("2")}, {qd("2"), qd("4")}), DegenerateCone);

  QVec apex = {qd("2+2/sqrt(6)"), qd("2+4/sqrt(6)")};
  CHECK(shifted_cone_subset(apex, nef, apex, nef));
  K3Comparison k3 = k3_comparison(nef, {{qd("2"), qd("4")}, {qd("2"), qd("3")}, {qd("2"), qd("2")}},
                                  {qd("2"), qd("1")});
  CHECK(k3.apex == apex);
  CHECK(k3.difference == QVec{qd("2/sqrt(6)"), qd("1+4/sqrt(6)")});
  CHECK(k3.difference_coordinates[1] == qd("-1/sqrt(6)"));
  CHECK_FALSE(k3.contained);
  CHECK(shifted_cone_subset(apex, nef, {qd("1"), qd("1")}, nef));
}

TEST_CASE("property: cone membership is scale invariant") {
  ConeQD nef({qd("1"), qd("2")}, {qd("1"), qd("2-sqrt(6)")}, {"H", "C"});
  std::mt19937 rng(808);
  for (int n = 0; n < 300; ++n) {
    auto q = [&] { return Rational(static_cast<int>(rng() % 21) - 10, 1 + static_cast<int>(rng() % 4)); };
    QVec v = {QuadExt(q(), q(), 6), QuadExt(q(), q(), 6)};
    Rational s(1 + static_cast<int>(rng() % 9), 1 + static_cast<int>(rng() % 5));
    CHECK(cone_contains(nef, v) == cone_contains(nef, QuadExt::rational(s, 6) * v));
  }
}

TEST_CASE("blow-up regions") {
  for (int d = 2; d <= 4; ++d) {
    BlowupComparison b = blowup_comparison(d);
    CHECK(b.product_apex == qvec(0, 1, 2));
    CHECK(b.ample_apex == qvec(d - 1, 1, 2));
    CHECK(b.ample_inside_product);
    CHECK_FALSE(b.product_inside_ample);
    CHECK(b.witness_separates);
    CHECK_FALSE(b.nef_worded_inside_product);
  }
  BlowupComparison one = blowup_comparison(1);
  CHECK(one.product_inside_ample);
  CHECK(one.ample_inside_product);
}
