#include "coxreg/lab.hpp"

#include <functional>
#include <string>

#include "coxreg/groebner.hpp"
#include "coxreg/parallel.hpp"

namespace coxreg {
namespace {

// Calls f on every increasing index subset of size e from 0..r-1.
void for_each_subset(std::size_t r, std::size_t e, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (e > r) return;
  std::vector<std::size_t> s(e);
  for (std::size_t k = 0; k < e; ++k) s[k] = k;
  while (true) {
    f(s);
    std::size_t k = e;
    while (k > 0 && s[k - 1] == r - e + (k - 1)) --k;
    if (k == 0) return;
    ++s[k - 1];
    for (std::size_t j = k; j < e; ++j) s[j] = s[j - 1] + 1;
  }
}

MultiDegree subset_sum(const std::vector<MultiDegree>& degrees, const std::vector<std::size_t>& s, std::size_t l) {
  MultiDegree sum(l);
  for (std::size_t k : s) sum += degrees[k];
  return sum;
}

void check_lengths(const std::vector<MultiDegree>& degrees, const MultiDegree& l) {
  for (const MultiDegree& d : degrees)
    if (d.size() != l.size()) throw std::invalid_argument("degree " + d.to_string() + " has the wrong length");
}

}  // namespace

bool is_nef(const MultiDegree& a) { return a.all_at_least(0); }
bool is_big_nef(const MultiDegree& a) { return a.all_at_least(1); }

Divisor Divisor::of_form(const Ring& ring, Polynomial form) {
  if (form.is_zero()) throw std::invalid_argument("divisor form is zero");
  auto deg = homogeneous_degree(ring, form);
  if (!deg) throw std::invalid_argument("divisor form is not homogeneous: " + to_string(ring, form));
  return Divisor{*deg, std::move(form)};
}

void Divisor::validate(const Ring& ring) const {
  if (degree.size() != ring.space().num_factors()) throw std::invalid_argument("divisor degree has the wrong length");
  if (!form) return;
  auto deg = homogeneous_degree(ring, *form);
  if (!deg || *deg != degree)
    throw std::invalid_argument("divisor form " + to_string(ring, *form) + " does not have degree " + degree.to_string());
}

HypothesisReport theorem_main_hypothesis(const std::vector<MultiDegree>& degrees, int e, int m, const MultiDegree& l) {
  if (e < 1) throw std::invalid_argument("theorem_main_hypothesis: e must be positive");
  if (m < 0) throw std::invalid_argument("theorem_main_hypothesis: m must be nonnegative");
  check_lengths(degrees, l);
  HypothesisReport out;
  for_each_subset(degrees.size(), static_cast<std::size_t>(e), [&](const std::vector<std::size_t>& s) {
    MultiDegree rest = l - subset_sum(degrees, s, l.size());
    for (std::size_t first : s) {
      ++out.checked;
      MultiDegree twist = rest - degrees[first] * m;
      if (!is_big_nef(twist)) out.witnesses.push_back({s, first, twist});
    }
  });
  out.holds = out.witnesses.empty();
  return out;
}

CodimensionMismatch::CodimensionMismatch(int e, int a)
    : std::invalid_argument("Y has codimension " + std::to_string(a) + ", expected " + std::to_string(e)),
      expected(e),
      actual(a) {}

TheoremMainResult check_theorem_main(CohomologyEngine& engine, const RingPtr& ring,
                                     const std::vector<Divisor>& generators, int e, int m, const MultiDegree& l,
                                     bool compute_anyway, unsigned threads) {
  std::vector<Polynomial> forms;
  std::vector<MultiDegree> degrees;
  for (const Divisor& d : generators) {
    d.validate(*ring);
    if (!d.form) throw std::invalid_argument("check_theorem_main: every divisor needs a form");
    forms.push_back(*d.form);
    degrees.push_back(d.degree);
  }
  TheoremMainResult out;
  out.hypothesis = theorem_main_hypothesis(degrees, e, m, l);
  Ideal y = engine.saturation(Ideal(ring, forms));
  int codim = codimension(y);
  if (codim != e) throw CodimensionMismatch(e, codim);
  const ProductSpace& x = ring->space();
  out.twist = x.canonical_degree() + l;
  if (!out.hypothesis.holds && !compute_anyway) return out;
  Module power = Module::of_ideal(m == 0 ? y : engine.saturation(ideal_power(y, m + 1)));
  out.higher.assign(static_cast<std::size_t>(x.dim()), 0);
  parallel_for(out.higher.size(), threads, [&](std::size_t k) {
    out.higher[k] = engine.sheaf_cohomology_dim(power, static_cast<int>(k) + 1, out.twist);
  });
  out.verified = out.hypothesis.holds;
  for (std::uint64_t h : out.higher)
    if (h != 0) out.verified = false;
  return out;
}

RegularityReport line_bundle_regular(const ProductSpace& x, const MultiDegree& a, const MultiDegree& l) {
  RegularityReport out;
  for (int i = 1; i <= x.dim(); ++i)
    for (const MultiDegree& u : compositions(x.num_factors(), i)) {
      std::uint64_t h = line_bundle_dim(x, i, a + l - u);
      if (h != 0) out.violations.push_back({i, u, h});
    }
  out.regular = out.violations.empty();
  return out;
}

RegionReport regularity_region_predicted(const ProductSpace& x, const std::vector<MultiDegree>& degrees, int dim_y,
                                         const MultiDegree& l, RegionPath path) {
  if (l.size() != x.num_factors()) throw std::invalid_argument("L has the wrong length");
  check_lengths(degrees, l);
  if (dim_y < 0 || dim_y >= x.dim()) throw std::invalid_argument("dim Y must lie in [0, dim X)");
  auto e = static_cast<std::size_t>(x.dim() - dim_y);
  if (e > degrees.size()) throw std::invalid_argument("fewer generators than the codimension");
  RegionReport out;
  if (path == RegionPath::Corollary) {
    for (const MultiDegree& d : degrees)
      if (!d.all_at_least(1))
        throw std::invalid_argument("degree " + d.to_string() +
                                    " is not a positive combination of the P_k; use the remark path");
  } else {
    out.structure_regular = line_bundle_regular(x, x.zero_degree(), x.canonical_degree() + l).regular;
  }
  std::vector<MultiDegree> us = compositions(x.num_factors(), dim_y + 1);
  for_each_subset(degrees.size(), e, [&](const std::vector<std::size_t>& s) {
    MultiDegree rest = l - subset_sum(degrees, s, l.size());
    for (const MultiDegree& u : us)
      if (!is_big_nef(rest - u)) out.witnesses.push_back({s, u, rest - u});
  });
  out.holds = out.structure_regular && out.witnesses.empty();
  return out;
}

RegularityReport is_L_regular(CohomologyEngine& engine, const Module& m, const MultiDegree& l, unsigned threads) {
  const ProductSpace& x = m.ring().space();
  if (l.size() != x.num_factors()) throw std::invalid_argument("L has the wrong length");
  std::vector<std::pair<int, MultiDegree>> cells;
  for (int i = 1; i <= x.dim(); ++i)
    for (const MultiDegree& u : compositions(x.num_factors(), i)) cells.emplace_back(i, u);
  std::vector<std::uint64_t> dims(cells.size());
  parallel_for(cells.size(), threads, [&](std::size_t c) {
    dims[c] = engine.sheaf_cohomology_dim(m, cells[c].first, l - cells[c].second);
  });
  RegularityReport out;
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (dims[c] != 0) out.violations.push_back({cells[c].first, cells[c].second, dims[c]});
  out.regular = out.violations.empty();
  return out;
}

SharpnessResult sharpness_witness(const ProductSpace& x, const std::vector<MultiDegree>& degrees,
                                  const MultiDegree& n) {
  if (degrees.empty()) throw std::invalid_argument("sharpness_witness: no degrees");
  check_lengths(degrees, n);
  if (n.size() != x.num_factors()) throw std::invalid_argument("N has the wrong length");
  if (!is_nef(n) || is_big_nef(n)) throw std::invalid_argument("N = " + n.to_string() + " must be nef and not big");
  for (const MultiDegree& d : degrees)
    if (!is_big_nef(d)) throw std::invalid_argument("degree " + d.to_string() + " is not big and nef");
  MultiDegree kn = x.canonical_degree() + n;
  bool nonzero = false;
  for (int j = 0; j <= x.dim(); ++j) nonzero = nonzero || line_bundle_dim(x, j, kn) != 0;
  if (!nonzero) throw std::invalid_argument("K + N = " + kn.to_string() + " has no cohomology");

  SharpnessResult out;
  const int e = static_cast<int>(degrees.size());
  out.twist = kn;
  for (const MultiDegree& d : degrees) out.twist += d;
  out.chop = koszul_chop(x, degrees, out.twist);
  if (!out.chop.valid) return out;
  for (int i = 1; i <= x.dim(); ++i) {
    std::uint64_t h = out.chop.dims[static_cast<std::size_t>(i)].value_or(0);
    if (h != 0) {
      out.index = i;
      out.dim = h;
      out.predicted = line_bundle_dim(x, i + e - 1, kn);
      break;
    }
  }
  if (out.chop.h0_valid && out.chop.dims[0].value_or(0) != 0) out.h0 = *out.chop.dims[0];
  return out;
}

std::vector<std::uint64_t> generic_ci_cohomology(CohomologyEngine& engine, const RingPtr& ring,
                                                 const std::vector<MultiDegree>& degrees, const MultiDegree& twist,
                                                 std::uint64_t seed, unsigned threads) {
  Module m = Module::of_ideal(Ideal(ring, generic_forms(ring, degrees, seed)));
  std::vector<std::uint64_t> out(static_cast<std::size_t>(ring->space().dim()) + 1);
  parallel_for(out.size(), threads,
               [&](std::size_t i) { out[i] = engine.sheaf_cohomology_dim(m, static_cast<int>(i), twist); });
  return out;
}

MultiplicationRank multiplication_rank(const RingPtr& ring, const MultiDegree& a, const MultiDegree& b) {
  MultiplicationRank out;
  std::vector<Monomial> target = degree_slice_basis(*ring, a + b);
  out.target = target.size();
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
  for (std::uint32_t c = 0; c < target.size(); ++c) index.emplace(target[c], c);
  std::vector<SparseRow> rows;
  std::vector<Monomial> right = degree_slice_basis(*ring, b);
  for (const Monomial& p : degree_slice_basis(*ring, a))
    for (const Monomial& q : right) rows.push_back({{index.at(p * q), ring->field().one()}});
  out.rank = rank(ring->field(), target.size(), rows);
  return out;
}

Ideal diagonal_ideal(const RingPtr& square, std::size_t factors) {
  const ProductSpace& sp = square->space();
  if (sp.num_factors() != 2 * factors) throw std::invalid_argument("diagonal_ideal: ring is not X x X");
  const Field& k = square->field();
  TermOrder ord(*square);
  std::vector<Polynomial> gens;
  auto var = [&](int v) {
    Monomial mon;
    mon.e[static_cast<std::size_t>(v)] = 1;
    mon.total = 1;
    return mon;
  };
  for (std::size_t f = 0; f < factors; ++f) {
    int a = sp.block_begin(f), b = sp.block_begin(f + factors), size = sp.block_size(f);
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j)
        gens.push_back(make_polynomial(ord, {{var(a + i) * var(b + j), 0, k.one()},
                                             {var(a + j) * var(b + i), 0, k.neg(k.one())}}));
  }
  return Ideal(square, std::move(gens));
}

bool multiplication_map_check(CohomologyEngine& engine, const ProductSpace& x, const Field& field,
                              const MultiDegree& l1, const MultiDegree& l2, MultMode mode, bool allow_large) {
  if (l1.size() != x.num_factors() || l2.size() != x.num_factors())
    throw std::invalid_argument("L has the wrong length");
  MultiDegree k = x.canonical_degree();
  if (mode == MultMode::DirectRank) return multiplication_rank(make_ring(x, field), k + l1, k + l2).surjective();
  ProductSpace sq = x.squared();
  if (sq.num_vars() > kDiagonalVarLimit && !allow_large)
    throw ScaleGuard("X x X = " + sq.to_string() + " has " + std::to_string(sq.num_vars()) +
                     " variables; the diagonal check is limited to " + std::to_string(kDiagonalVarLimit));
  RingPtr ring = make_ring(sq, field);
  std::vector<int> twist = sq.canonical_degree().components();
  for (std::size_t f = 0; f < x.num_factors(); ++f) {
    twist[f] += l1[f];
    twist[f + x.num_factors()] += l2[f];
  }
  Module diag = Module::of_ideal(diagonal_ideal(ring, x.num_factors()));
  return engine.sheaf_cohomology_dim(diag, 1, MultiDegree(twist)) == 0;
}

bool multiplication_hypothesis(const MultiDegree& l1, const MultiDegree& l2, const std::vector<MultiDegree>& a) {
  check_lengths(a, l1);
  MultiDegree sum(l1.size());
  for (const MultiDegree& d : a) sum += d;
  return is_big_nef(l1 - sum) && is_big_nef(l2 - sum);
}

namespace {

Ideal wahl_power(const Field& field, int m) {
  if (m < 0) throw std::invalid_argument("Wahl map order must be nonnegative");
  RingPtr ring = make_ring(ProductSpace({1, 1}), field);
  return ideal_power(diagonal_ideal(ring, 1), m + 1);
}

}  // namespace

WahlResult wahl_vanishing_check(int m, int l1, int l2, const Field& field) {
  Ideal p = wahl_power(field, m);
  const auto& gens = p.minimal_generators();
  if (gens.size() != 1) throw std::logic_error("power of the diagonal of P1 x P1 is not principal");
  MultiDegree g = p.ring().degree(gens.front().leading().mon);
  WahlResult out;
  out.twist = MultiDegree({l1 - 2, l2 - 2}) - g;
  out.h1 = line_bundle_dim(p.ring().space(), 1, out.twist);
  out.vanishes = out.h1 == 0;
  return out;
}

bool wahl_reduction_holds(const Field& field, int m, int box) {
  Ideal p = wahl_power(field, m);
  if (p.minimal_generators().size() != 1) return false;
  const ProductSpace& sp = p.ring().space();
  MultiDegree shift({m + 1, m + 1});
  if (p.ring().degree(p.minimal_generators().front().leading().mon) != shift) return false;
  for (int a = 0; a <= box; ++a)
    for (int b = 0; b <= box; ++b) {
      MultiDegree u({a, b});
      std::uint64_t piece = degree_slice_dimension(sp, u) - quotient_slice_dimension(p, u);
      if (piece != degree_slice_dimension(sp, u - shift)) return false;
    }
  return true;
}

}  // namespace coxreg
