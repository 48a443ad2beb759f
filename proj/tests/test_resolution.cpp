#include <map>
#include <random>

#include "coxreg/resolution.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace coxreg;
using coxreg::testing::curve_generators;
using coxreg::testing::random_homogeneous_ideal;

namespace {

RingPtr ring_of(std::vector<int> f, Field k = Field::prime()) { return make_ring(ProductSpace(std::move(f)), k); }

std::vector<std::size_t> v(std::initializer_list<std::size_t> l) { return l; }

// d_{i+1} restricted to degree u, written on monomial bases of the free modules.
std::size_t slice_rank(const FreeResolution& r, std::size_t i, const MultiDegree& u) {
  const Ring& ring = *r.ring;
  std::vector<std::uint32_t> offset;
  std::uint32_t total = 0;
  std::vector<std::unordered_map<Monomial, std::uint32_t, MonomialHash>> index;
  for (const MultiDegree& a : r.modules[i].degrees) {
    offset.push_back(total);
    auto basis = degree_slice_basis(ring, u - a);
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> idx;
    for (std::uint32_t c = 0; c < basis.size(); ++c) idx.emplace(basis[c], c);
    total += static_cast<std::uint32_t>(basis.size());
    index.push_back(std::move(idx));
  }
  std::vector<SparseRow> rows;
  for (std::uint32_t h = 0; h < r.modules[i + 1].rank(); ++h)
    for (const Monomial& m : degree_slice_basis(ring, u - r.modules[i + 1].degrees[h])) {
      std::map<std::uint32_t, Scalar> acc;
      for (const Term& t : r.differentials[i][h].terms()) {
        std::uint32_t c = offset[t.comp] + index[t.comp].at(t.mon * m);
        auto [it, ins] = acc.emplace(c, ring.field().zero());
        it->second = ring.field().add(it->second, t.coef);
      }
      SparseRow row;
      for (auto& [c, s] : acc)
        if (!ring.field().is_zero(s)) row.emplace_back(c, s);
      rows.push_back(row);
    }
  return rank(ring.field(), total, rows);
}

std::size_t free_slice_dim(const Ring& ring, const FreeModule& f, const MultiDegree& u) {
  std::size_t n = 0;
  for (const MultiDegree& a : f.degrees) n += degree_slice_dimension(ring.space(), u - a);
  return n;
}

// Homology of F_u vanishes above 0 and equals (S/I)_u at 0.
void check_exact_in_degree(const FreeResolution& r, const Ideal& i, const MultiDegree& u) {
  const Ring& ring = *r.ring;
  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k < r.differentials.size(); ++k) ranks.push_back(slice_rank(r, k, u));
  for (std::size_t k = 0; k < r.modules.size(); ++k) {
    std::size_t dim = free_slice_dim(ring, r.modules[k], u);
    std::size_t out = k > 0 ? ranks[k - 1] : 0;
    std::size_t in = k < ranks.size() ? ranks[k] : 0;
    std::size_t homology = dim - out - in;
    CHECK(homology == (k == 0 ? quotient_slice_dimension(i, u) : 0));
  }
}

std::vector<MultiDegree> small_grid(std::size_t factors, int hi) {
  std::vector<MultiDegree> out;
  MultiDegree d(factors);
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == factors) {
      out.push_back(d);
      return;
    }
    for (int x = 0; x <= hi; ++x) {
      d[b] = x;
      rec(b + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

TEST_CASE("resolution examples") {
  auto p1 = ring_of({1});
  FreeResolution r = resolve(Ideal::parse(p1, "x0; x1"), ModuleKind::Quotient);
  CHECK(r.ranks() == v({1, 2, 1}));
  CHECK(r.betti(2).at(MultiDegree({2})) == 1);

  auto p11 = ring_of({1, 1});
  FreeResolution seg = resolve(Ideal::parse(p11, "x0*y1 - x1*y0"), ModuleKind::Quotient);
  CHECK(seg.ranks() == v({1, 1}));
  CHECK(seg.betti(1).at(MultiDegree({1, 1})) == 1);

  FreeResolution id = resolve(Ideal::parse(p1, "x0; x1"), ModuleKind::Ideal);
  CHECK(id.ranks() == v({2, 1}));
  CHECK(id.differentials.size() == 1);

  CHECK(resolve(Ideal::zero(p1), ModuleKind::Quotient).ranks() == v({1}));
  CHECK(resolve(Ideal::unit(p1), ModuleKind::Quotient).ranks() == v({0}));
}

TEST_CASE("irrelevant ideal resolution is the tensor of Koszul complexes") {
  auto r = ring_of({1, 1});
  FreeResolution f = resolve(Ideal::irrelevant(r), ModuleKind::Quotient);
  CHECK(f.ranks() == v({1, 4, 4, 1}));
  CHECK(f.betti(3).at(MultiDegree({2, 2})) == 1);
  CHECK(composes_to_zero(f));
  CHECK(is_minimal(f));
}

TEST_CASE("curve resolution") {
  auto r = ring_of({2, 2});
  Ideal i(r, curve_generators(*r, true));
  FreeResolution f = resolve(i, ModuleKind::Quotient);
  CHECK(f.length() <= 6);
  CHECK(f.modules[1].rank() == 6);
  CHECK(composes_to_zero(f));
  CHECK(entries_homogeneous(f));
  CHECK(is_minimal(f));
  for (const MultiDegree& u : {MultiDegree({2, 2}), MultiDegree({3, 1}), MultiDegree({1, 3})})
    check_exact_in_degree(f, i, u);
  FreeResolution raw = resolve(i, ModuleKind::Quotient, {.minimal = false});
  CHECK(composes_to_zero(raw));
  FreeResolution cut = minimize(raw);
  CHECK(is_minimal(cut));
  for (std::size_t k = 0; k < f.modules.size(); ++k) CHECK(cut.betti(k) == f.betti(k));
}

TEST_CASE("Koszul complexes") {
  auto p11 = ring_of({1, 1});
  auto shape = koszul_shape({MultiDegree({1, 0}), MultiDegree({0, 1})});
  REQUIRE(shape.size() == 3);
  CHECK(shape[1].degrees == std::vector<MultiDegree>{MultiDegree({1, 0}), MultiDegree({0, 1})});
  CHECK(shape[2].degrees == std::vector<MultiDegree>{MultiDegree({1, 1})});
  CHECK(koszul_shape({MultiDegree({1, 1})}).size() == 2);

  auto p22 = ring_of({2, 2});
  std::vector<MultiDegree> d(3, MultiDegree({1, 1}));
  auto forms = generic_forms(p22, d, 7);
  FreeResolution k = koszul_resolution(p22, forms);
  CHECK(k.ranks() == v({1, 3, 3, 1}));
  CHECK(k.betti(3).at(MultiDegree({3, 3})) == 1);
  CHECK(composes_to_zero(k));
  CHECK(entries_homogeneous(k));
  Ideal ci(p22, forms);
  CHECK(has_complete_intersection_hilbert_values(ci, d));
  check_exact_in_degree(k, ci, MultiDegree({2, 2}));
  FreeResolution m = resolve(ci, ModuleKind::Quotient);
  for (std::size_t j = 0; j < 4; ++j) CHECK(m.betti(j) == k.betti(j));

  auto bad = Ideal::parse(p11, "x0*y0; x0*y1");
  CHECK_FALSE(has_complete_intersection_hilbert_values(bad, {MultiDegree({1, 1}), MultiDegree({1, 1})}));
}

TEST_CASE("Hom slice complex examples") {
  auto p1 = ring_of({1});
  FreeResolution f = resolve(Ideal::irrelevant(p1), ModuleKind::Quotient);
  Ideal zero = Ideal::zero(p1);
  auto h = complex_cohomology_dims(p1->field(), hom_slice_complex(f, zero, ModuleKind::Quotient, MultiDegree({-2})));
  CHECK(h == v({0, 0, 1}));
  h = complex_cohomology_dims(p1->field(), hom_slice_complex(f, zero, ModuleKind::Quotient, MultiDegree({3})));
  CHECK(h == v({0, 0, 0}));

  Ideal line = Ideal::parse(p1, "x0");
  FreeResolution g = resolve(line, ModuleKind::Quotient);
  auto c = hom_slice_complex(g, line, ModuleKind::Quotient, MultiDegree({2}));
  CHECK(c.dims == v({1, 1}));
  CHECK(complex_cohomology_dims(p1->field(), c) == v({1, 1}));
}

TEST_CASE("property: minimal resolutions are exact and minimal") {
  std::mt19937 rng(101);
  for (int n = 0; n < 100; ++n) {
    Field k = n % 4 == 0 ? Field::rationals() : Field::prime();
    Ideal i = random_homogeneous_ideal(rng, k);
    FreeResolution f = resolve(i, ModuleKind::Quotient);
    REQUIRE(composes_to_zero(f));
    CHECK(entries_homogeneous(f));
    CHECK(is_minimal(f));
    CHECK(static_cast<int>(f.length()) <= i.ring().num_vars());
    for (const MultiDegree& u : small_grid(i.ring().space().num_factors(), 3)) check_exact_in_degree(f, i, u);
    FreeResolution cut = minimize(resolve(i, ModuleKind::Quotient, {.minimal = false}));
    REQUIRE(cut.modules.size() == f.modules.size());
    for (std::size_t j = 0; j < f.modules.size(); ++j) CHECK(cut.betti(j) == f.betti(j));
  }
}

TEST_CASE("property: Hom^0 into a quotient is the colon") {
  std::mt19937 rng(202);
  for (int n = 0; n < 100; ++n) {
    Ideal i = random_homogeneous_ideal(rng, Field::prime());
    Ideal j = random_homogeneous_ideal(rng, Field::prime(), i.ring_ptr());
    FreeResolution f = resolve(i, ModuleKind::Quotient);
    Ideal quot = colon(j, i);
    for (const MultiDegree& u : small_grid(i.ring().space().num_factors(), 2)) {
      auto c = hom_slice_complex(f, j, ModuleKind::Quotient, u);
      REQUIRE(hom_complex_is_complex(i.ring().field(), c));
      auto h = complex_cohomology_dims(i.ring().field(), c);
      std::size_t want = quotient_slice_dimension(j, u) - quotient_slice_dimension(quot, u);
      CHECK(h[0] == want);
      auto ci = hom_slice_complex(f, j, ModuleKind::Ideal, u);
      CHECK(hom_complex_is_complex(i.ring().field(), ci));
    }
  }
}

TEST_CASE("property: Euler characteristic of the Hom complex") {
  std::mt19937 rng(303);
  for (int n = 0; n < 100; ++n) {
    Ideal i = random_homogeneous_ideal(rng, Field::prime());
    Ideal j = random_homogeneous_ideal(rng, Field::prime(), i.ring_ptr());
    FreeResolution f = resolve(i, ModuleKind::Quotient);
    MultiDegree u(i.ring().space().num_factors());
    for (std::size_t b = 0; b < u.size(); ++b) u[b] = static_cast<int>(rng() % 5) - 2;
    for (ModuleKind kind : {ModuleKind::Quotient, ModuleKind::Ideal}) {
      auto c = hom_slice_complex(f, j, kind, u);
      auto h = complex_cohomology_dims(i.ring().field(), c);
      long lhs = 0, rhs = 0;
      for (std::size_t k = 0; k < h.size(); ++k) {
        lhs += (k % 2 ? -1 : 1) * static_cast<long>(h[k]);
        rhs += (k % 2 ? -1 : 1) * static_cast<long>(c.dims[k]);
      }
      CHECK(lhs == rhs);
      std::size_t expect = 0;
      for (const MultiDegree& a : f.modules[0].degrees) {
        std::size_t q = quotient_slice_dimension(j, u + a);
        expect += kind == ModuleKind::Quotient ? q : degree_slice_dimension(i.ring().space(), u + a) - q;
      }
      CHECK(c.dims[0] == expect);
    }
  }
}
