#include <random>

#include "coxreg/cohomology.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace coxreg;
using coxreg::testing::curve_generators;
using coxreg::testing::random_homogeneous_ideal;

namespace {

RingPtr ring_of(std::vector<int> f, Field k = Field::prime()) { return make_ring(ProductSpace(std::move(f)), k); }
MultiDegree md(std::initializer_list<int> l) { return MultiDegree(std::vector<int>(l)); }

CohomologyEngine& engine() {
  static CohomologyEngine e;
  return e;
}

// Ext^i(S/B^[t], M)_u straight from the dense Hom complex.
std::size_t dense_ext(const Module& m, int i, const MultiDegree& u, int t) {
  auto b = engine().bracket_resolution(m.ring(), t);
  auto c = hom_slice_complex(b->res, m.ideal, m.kind, u);
  auto h = complex_cohomology_dims(m.ring().field(), c);
  return static_cast<std::size_t>(i) < h.size() ? h[static_cast<std::size_t>(i)] : 0;
}

MultiDegree random_twist(std::mt19937& rng, std::size_t factors, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  MultiDegree u(factors);
  for (std::size_t k = 0; k < factors; ++k) u[k] = d(rng);
  return u;
}

}  // namespace

TEST_CASE("line bundle cohomology examples") {
  ProductSpace p22({2, 2}), p12({1, 2});
  auto t = line_bundle_cohomology(p22, md({-3, 0}));
  for (int i = 0; i <= 4; ++i) CHECK(t.dim(i, md({-3, 0})) == (i == 2 ? 1u : 0u));
  CHECK(t.get(2, md({-3, 0}))->provenance == Provenance::ClosedForm);
  CHECK(line_bundle_dim(p22, 0, md({0, 0})) == 1);
  CHECK(line_bundle_dim(p22, 4, md({0, 0})) == 0);
  CHECK(line_bundle_dim(p12, 1, md({-2, 1})) == 3);
  CHECK(line_bundle_dim(p12, 0, md({-2, 1})) == 0);
  CHECK(line_bundle_dim(p22, 2, md({-3, 0})) == 1);
  CHECK(line_bundle_dim(ProductSpace({1}), 1, md({-4})) == 3);
  CHECK(line_bundle_euler(p22, md({1, 1})) == 9);
  CHECK(line_bundle_euler(ProductSpace({1}), md({-3})) == -2);
  CHECK_THROWS_AS(line_bundle_dim(p22, 0, md({1})), std::invalid_argument);
  CohomologyTable bad(p22);
  CHECK_THROWS_AS(bad.set(5, md({0, 0}), 1, Provenance::ClosedForm), std::logic_error);
  CHECK_NOTHROW(bad.set(5, md({0, 0}), 0, Provenance::ClosedForm));
  CHECK(bad.dim(7, md({0, 0})) == 0);
  CHECK_THROWS_AS(bad.dim(1, md({0, 0})), std::out_of_range);
}

TEST_CASE("property: Serre duality and Euler characteristic of line bundles") {
  std::mt19937 rng(11);
  std::vector<ProductSpace> spaces = {ProductSpace({1}), ProductSpace({2}), ProductSpace({1, 1}),
                                      ProductSpace({2, 2}), ProductSpace({1, 2, 1})};
  for (int n = 0; n < 300; ++n) {
    const ProductSpace& x = spaces[static_cast<std::size_t>(n) % spaces.size()];
    MultiDegree a = random_twist(rng, x.num_factors(), -7, 5);
    BigInt chi = 0;
    for (int i = 0; i <= x.dim(); ++i) {
      CHECK(line_bundle_dim(x, i, a) == line_bundle_dim(x, x.dim() - i, x.canonical_degree() - a));
      chi += (i % 2 ? -1 : 1) * BigInt(static_cast<unsigned long>(line_bundle_dim(x, i, a)));
    }
    CHECK(chi == line_bundle_euler(x, a));
  }
}

TEST_CASE("local cohomology examples") {
  auto p1 = ring_of({1});
  Module s = Module::structure(p1);
  for (int u = -4; u <= 4; ++u) {
    CHECK(engine().local_cohomology_dim(s, 0, md({u})) == 0);
    CHECK(engine().local_cohomology_dim(s, 1, md({u})) == 0);
    CHECK(engine().local_cohomology_dim(s, 2, md({u})) == line_bundle_dim(ProductSpace({1}), 1, md({u})));
  }
  Module q = Module::quotient(Ideal::parse(p1, "x0^2; x0*x1"));
  CHECK(engine().local_cohomology_dim(q, 0, md({1})) == 1);
  CHECK(engine().local_cohomology_dim(q, 0, md({2})) == 0);
  CHECK(engine().local_cohomology_dim(s, 2, md({-20})) == 19);
}

TEST_CASE("stabilization parameters") {
  CHECK_THROWS_AS((Stabilization{0, 8}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Stabilization{3, 4}.validate()), std::invalid_argument);
  CHECK_THROWS_AS(CohomologyEngine(Stabilization{2, 3}), std::invalid_argument);
  auto p1 = ring_of({1});
  LocalCohomologyRequest req{Module::structure(p1), 2, md({-3}), Stabilization{2, 4}};
  CHECK(engine().local_cohomology_dim(req) == 2);
  CHECK(stabilization_floor(Module::structure(p1), md({-20})) == 19);
  CHECK(stabilization_floor(Module::structure(p1), md({3})) == 1);
}

TEST_CASE("stabilization failure is reported") {
  // H^0_B of the finite-length module S/(x0^6, x1^6) in degree 5 is all of M_5;
  // level t only sees the monomials x0^a x1^b with a, b >= 6 - t
  auto p1 = ring_of({1});
  Module m = Module::quotient(Ideal::parse(p1, "x0^6; x1^6"));
  std::vector<std::uint64_t> vals;
  for (int t = 2; t <= 7; ++t) vals.push_back(engine().ext_dim(m, 0, md({5}), t));
  CHECK(vals == std::vector<std::uint64_t>{0, 0, 2, 4, 6, 6});
  CHECK(engine().local_cohomology_dim(m, 0, md({5})) == 6);
  LocalCohomologyRequest short_window{m, 0, md({5}), Stabilization{2, 5}};
  try {
    engine().local_cohomology_dim(short_window);
    FAIL("expected StabilizationNotReached");
  } catch (const StabilizationNotReached& e) {
    CHECK(e.index() == 0);
    CHECK(e.values() == std::vector<std::uint64_t>{0, 0, 2, 4});
    CHECK(std::string(e.what()).find("did not stabilize") != std::string::npos);
  }
}

TEST_CASE("sheaf cohomology examples") {
  auto p2 = ring_of({2});
  Module ipt = Module::of_ideal(Ideal::parse(p2, "x0; x1"));
  CHECK(engine().sheaf_cohomology_dim(ipt, 1, md({0})) == 0);
  CHECK(engine().sheaf_cohomology_dim(ipt, 0, md({0})) == 0);
  CHECK(engine().sheaf_cohomology_dim(ipt, 0, md({1})) == 2);
  CHECK(engine().sheaf_cohomology_dim(ipt, 2, md({-3})) == 1);
  CHECK(engine().sheaf_cohomology_dim(ipt, 3, md({-3})) == 0);
  Module pt = Module::quotient(Ideal::parse(p2, "x0; x1"));
  for (int u = -3; u <= 2; ++u) {
    CHECK(engine().sheaf_cohomology_dim(pt, 0, md({u})) == 1);
    CHECK(engine().sheaf_cohomology_dim(pt, 1, md({u})) == 0);
  }
  // the unsaturated presentation gives the same sheaf
  Module fat = Module::quotient(Ideal::parse(p2, "x0; x1*x2; x1^2"));
  CHECK(engine().sheaf_cohomology_dim(fat, 0, md({-1})) == 1);
  CHECK(engine().sheaf_cohomology_dim(fat, 0, md({1})) == 1);
}

TEST_CASE("curve sheaf cohomology") {
  auto r = ring_of({2, 2});
  Ideal iy(r, curve_generators(*r, true));
  Module oy = Module::quotient(iy);
  CHECK(euler_characteristic(oy, md({1, 5})) == 17);
  CHECK(engine().sheaf_cohomology_dim(oy, 0, md({1, 5})) == 17);
  CHECK(engine().sheaf_cohomology_dim(oy, 1, md({1, 5})) == 0);
  // degree 6a + 2b on the rational curve
  CHECK(engine().sheaf_cohomology_dim(oy, 0, md({0, 0})) == 1);
  CHECK(engine().sheaf_cohomology_dim(oy, 1, md({-1, 0})) == 5);
  Module ideal = Module::of_ideal(iy);
  for (int i = 1; i <= 3; ++i) CHECK(engine().sheaf_cohomology_dim(ideal, i, md({1, 5}) - md({i, 0})) == 0);
}

TEST_CASE("Euler characteristic examples") {
  auto p1 = ring_of({1});
  CHECK(euler_characteristic(Module::structure(p1), md({2})) == 3);
  auto p11 = ring_of({1, 1});
  CHECK(euler_characteristic(Module::quotient(Ideal::parse(p11, "x0*y1 - x1*y0")), md({1, 1})) == 3);
  CHECK(euler_characteristic(Module::of_ideal(Ideal::parse(p11, "x0*y1 - x1*y0")), md({1, 1})) == 1);
  CHECK(euler_characteristic(Module::of_ideal(Ideal::zero(p11)), md({1, 1})) == 0);
}

TEST_CASE("Koszul chop") {
  ProductSpace p22({2, 2});
  std::vector<MultiDegree> three(3, md({1, 1}));
  MultiDegree twist = p22.canonical_degree() + md({3, 3}) + md({0, 3});
  CHECK(twist == md({0, 3}));
  KoszulChop c = koszul_chop(p22, three, twist);
  CHECK(c.valid);
  CHECK(c.h0_valid);
  REQUIRE(c.dims.size() == 5);
  CHECK(*c.dims[0] == 1);
  for (int i = 1; i <= 4; ++i) CHECK(*c.dims[static_cast<std::size_t>(i)] == 0);

  KoszulChop one = koszul_chop(p22, {md({1, 1})}, p22.canonical_degree() + md({1, 1}) + md({0, 3}));
  CHECK(one.valid);
  for (int i = 0; i <= 4; ++i)
    CHECK(*one.dims[static_cast<std::size_t>(i)] == line_bundle_dim(p22, i, p22.canonical_degree() + md({0, 3})));
  CHECK(*one.dims[2] == 1);

  KoszulChop big = koszul_chop(p22, three, p22.canonical_degree() + md({3, 3}) + md({1, 2}));
  CHECK(big.valid);
  for (int i = 1; i <= 4; ++i) CHECK(*big.dims[static_cast<std::size_t>(i)] == 0);

  KoszulChop blocked = koszul_chop(ProductSpace({1}), {md({1}), md({1})}, md({-3}));
  CHECK_FALSE(blocked.valid);
  CHECK_FALSE(blocked.dims[1].has_value());
  CHECK(blocked.obstructions.size() == 2);
  CHECK_THROWS_AS(koszul_chop(p22, {md({1, 0})}, md({0, 0})), std::invalid_argument);
}

TEST_CASE("Koszul chop agrees with the Ext engine on a complete intersection") {
  auto r = ring_of({2, 2});
  std::vector<MultiDegree> three(3, md({1, 1}));
  Ideal ci(r, generic_forms(r, three, 5));
  Module m = Module::of_ideal(ci);
  for (const MultiDegree& n : {md({0, 3}), md({1, 1}), md({3, 0})}) {
    MultiDegree twist = r->space().canonical_degree() + md({3, 3}) + n;
    KoszulChop c = koszul_chop(r->space(), three, twist);
    REQUIRE(c.valid);
    for (int i = 0; i <= 4; ++i)
      if (c.dims[static_cast<std::size_t>(i)])
        CHECK(engine().sheaf_cohomology_dim(m, i, twist) == *c.dims[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("property: Ext engine on free modules matches the closed form") {
  std::mt19937 rng(404);
  std::vector<RingPtr> rings = {ring_of({1, 1}), ring_of({2, 2}), ring_of({1}), ring_of({1, 2})};
  for (int n = 0; n < 60; ++n) {
    RingPtr r = rings[static_cast<std::size_t>(n) % rings.size()];
    MultiDegree u = random_twist(rng, r->space().num_factors(), -7, 4);
    for (int i = 0; i <= r->space().dim(); ++i)
      CHECK(engine().sheaf_cohomology_dim(Module::structure(r), i, u) == line_bundle_dim(r->space(), i, u));
  }
}

TEST_CASE("property: bucketed and cone Ext agree with the dense Hom complex") {
  std::mt19937 rng(505);
  for (int n = 0; n < 100; ++n) {
    Ideal i = random_homogeneous_ideal(rng, n % 5 == 0 ? Field::rationals() : Field::prime());
    const ProductSpace& sp = i.ring().space();
    MultiDegree u = random_twist(rng, sp.num_factors(), -3, 2);
    int t = 1 + n % 2;
    for (ModuleKind kind : {ModuleKind::Quotient, ModuleKind::Ideal}) {
      Module m{i, kind};
      for (int j = 0; j <= sp.num_vars(); ++j) CHECK(engine().ext_dim(m, j, u, t) == dense_ext(m, j, u, t));
    }
    Module s = Module::structure(i.ring_ptr());
    for (int j = 0; j <= sp.num_vars(); ++j) CHECK(engine().ext_dim(s, j, u, t) == dense_ext(s, j, u, t));
  }
}

TEST_CASE("property: Euler characteristic matches the signed cohomology") {
  std::mt19937 rng(606);
  for (int n = 0; n < 100; ++n) {
    Ideal i = random_homogeneous_ideal(rng, Field::prime());
    const ProductSpace& sp = i.ring().space();
    MultiDegree u = random_twist(rng, sp.num_factors(), -3, 3);
    for (ModuleKind kind : {ModuleKind::Quotient, ModuleKind::Ideal}) {
      Module m{i, kind};
      BigInt signed_sum = 0;
      for (int j = 0; j <= sp.dim(); ++j)
        signed_sum += (j % 2 ? -1 : 1) * BigInt(static_cast<unsigned long>(engine().sheaf_cohomology_dim(m, j, u)));
      CHECK(signed_sum == euler_characteristic(m, u));
    }
    CHECK(euler_characteristic(Module::quotient(i), u) + euler_characteristic(Module::of_ideal(i), u) ==
          line_bundle_euler(sp, u));
  }
}

TEST_CASE("tables are independent of the worker count") {
  auto r = ring_of({1, 1});
  Module m = Module::quotient(Ideal::parse(r, "x0*y0; x1*y1^2"));
  std::vector<MultiDegree> twists;
  for (int a = -2; a <= 1; ++a)
    for (int b = -2; b <= 1; ++b) twists.push_back(md({a, b}));
  auto one = engine().sheaf_cohomology_table(m, twists, 1);
  auto four = engine().sheaf_cohomology_table(m, twists, 4);
  CHECK(one.entries().size() == twists.size() * 3);
  for (const auto& [key, e] : one.entries()) CHECK(four.get(key.first, key.second)->dim == e.dim);
}
