#include "coxreg/resolution.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <random>

namespace coxreg {
namespace {

ModuleLayout pot_layout(const std::vector<MultiDegree>& degrees) {
  ModuleLayout l;
  l.kind = ModuleLayout::Kind::PositionOverTerm;
  for (const MultiDegree& d : degrees) l.shift_total.push_back(d.total());
  return l;
}

using Column = std::map<std::uint32_t, Polynomial>;

Column split_column(const Ring& ring, const Polynomial& col) {
  std::map<std::uint32_t, std::vector<Term>> parts;
  for (const Term& t : col.terms()) parts[t.comp].push_back(Term{t.mon, 0, t.coef});
  Column out;
  TermOrder ord(ring);
  for (auto& [c, terms] : parts) out.emplace(c, make_polynomial(ord, std::move(terms)));
  return out;
}

Polynomial join_column(const Ring& ring, const FreeModule& target, const Column& col) {
  std::vector<Term> terms;
  for (const auto& [c, p] : col)
    for (const Term& t : p.terms()) terms.push_back(Term{t.mon, c, t.coef});
  return make_polynomial(TermOrder(ring, pot_layout(target.degrees)), std::move(terms));
}

SparseRow finish_row(std::map<std::uint32_t, Scalar>& acc, const Field& k) {
  SparseRow row;
  for (auto& [c, s] : acc)
    if (!k.is_zero(s)) row.emplace_back(c, s);
  return row;
}

}  // namespace

std::vector<std::size_t> FreeResolution::ranks() const {
  std::vector<std::size_t> r;
  for (const FreeModule& f : modules) r.push_back(f.rank());
  return r;
}

Polynomial FreeResolution::entry(std::size_t i, std::uint32_t row, std::uint32_t col) const {
  Column c = split_column(*ring, differentials.at(i).at(col));
  auto it = c.find(row);
  return it == c.end() ? Polynomial() : it->second;
}

std::map<MultiDegree, std::size_t> FreeResolution::betti(std::size_t i) const {
  std::map<MultiDegree, std::size_t> b;
  for (const MultiDegree& d : modules.at(i).degrees) ++b[d];
  return b;
}

Syzygies syzygies(const Ring& ring, const FreeModule& target, const std::vector<Polynomial>& columns,
                  const std::vector<MultiDegree>& column_degrees, bool minimal) {
  const auto m = static_cast<std::uint32_t>(target.rank());
  std::vector<MultiDegree> all = target.degrees;
  all.insert(all.end(), column_degrees.begin(), column_degrees.end());
  TermOrder ord(ring, pot_layout(all));
  const Field& k = ring.field();
  std::vector<Polynomial> inputs;
  for (std::uint32_t j = 0; j < columns.size(); ++j) {
    std::vector<Term> terms = columns[j].terms();
    terms.push_back(Term{Monomial{}, m + j, k.one()});
    inputs.push_back(make_polynomial(ord, std::move(terms)));
  }
  TermOrder own(ring, pot_layout(column_degrees));
  std::vector<Polynomial> syz;
  for (const Polynomial& g : buchberger(ord, inputs).basis) {
    if (g.leading().comp < m) continue;
    std::vector<Term> terms;
    for (const Term& t : g.terms()) terms.push_back(Term{t.mon, t.comp - m, t.coef});
    syz.push_back(make_polynomial(own, std::move(terms)));
  }
  Syzygies out;
  if (minimal && !syz.empty()) {
    for (std::size_t i : buchberger(own, syz).minimal_inputs) out.columns.push_back(syz[i]);
  } else {
    out.columns = std::move(syz);
  }
  for (const Polynomial& c : out.columns)
    out.degrees.push_back(ring.degree(c.leading().mon) + column_degrees[c.leading().comp]);
  return out;
}

FreeResolution resolve(const Ideal& i, ModuleKind kind, ResolveOptions opts) {
  const Ring& ring = i.ring();
  // non-minimal syzygy chains may run past the number of variables before the
  // last map becomes injective
  const int cap = opts.max_length >= 0 ? opts.max_length : opts.minimal ? ring.num_vars() : 4 * ring.num_vars() + 4;
  FreeResolution r;
  r.ring = i.ring_ptr();
  r.modules.push_back(FreeModule{{ring.space().zero_degree()}});
  const auto& gens = opts.minimal ? i.minimal_generators() : i.groebner();
  if (!gens.empty()) {
    TermOrder ord(ring, pot_layout(r.modules[0].degrees));
    FreeModule f1;
    std::vector<Polynomial> cols;
    for (const Polynomial& g : gens) {
      f1.degrees.push_back(ring.degree(g.leading().mon));
      cols.push_back(reorder(ord, g));
    }
    r.modules.push_back(f1);
    r.differentials.push_back(cols);
    while (static_cast<int>(r.modules.size()) <= cap) {
      const FreeModule& src = r.modules.back();
      const FreeModule& tgt = r.modules[r.modules.size() - 2];
      Syzygies s = syzygies(ring, tgt, r.differentials.back(), src.degrees, opts.minimal);
      if (s.columns.empty()) break;
      r.modules.push_back(FreeModule{s.degrees});
      r.differentials.push_back(std::move(s.columns));
    }
  }
  if (opts.minimal) r = minimize(r);
  if (kind == ModuleKind::Ideal) {
    r.modules.erase(r.modules.begin());
    if (!r.differentials.empty()) r.differentials.erase(r.differentials.begin());
  }
  return r;
}

FreeResolution minimize(const FreeResolution& in) {
  const Ring& ring = *in.ring;
  const Field& k = ring.field();
  TermOrder ord(ring);
  std::vector<FreeModule> mods = in.modules;
  std::vector<std::vector<Column>> mats;
  for (const auto& d : in.differentials) {
    std::vector<Column> cols;
    for (const Polynomial& c : d) cols.push_back(split_column(ring, c));
    mats.push_back(std::move(cols));
  }
  auto drop_row = [](std::vector<Column>& mat, std::uint32_t row) {
    for (Column& col : mat) {
      Column next;
      for (auto& [r, p] : col) {
        if (r == row) continue;
        next.emplace(r > row ? r - 1 : r, std::move(p));
      }
      col = std::move(next);
    }
  };
  while (true) {
    bool found = false;
    std::size_t i = 0;
    std::uint32_t g = 0, h = 0;
    for (i = 0; i < mats.size() && !found; ++i)
      for (h = 0; h < mats[i].size() && !found; ++h)
        for (auto& [row, p] : mats[i][h])
          if (p.size() == 1 && p.leading().mon.is_one()) {
            g = row;
            found = true;
            break;
          }
    if (!found) break;
    --i;
    --h;
    std::vector<Column>& mat = mats[i];
    const Column pivot = mat[h];
    Scalar unit_inv = k.inv(pivot.at(g).leading().coef);
    for (std::uint32_t c = 0; c < mat.size(); ++c) {
      if (c == h) continue;
      auto it = mat[c].find(g);
      if (it == mat[c].end()) continue;
      Polynomial factor = scale(k, it->second, unit_inv);
      for (const auto& [row, q] : pivot) {
        Polynomial upd = sub(ord, mat[c].count(row) ? mat[c][row] : Polynomial(), mul(ord, factor, q));
        if (upd.is_zero()) mat[c].erase(row);
        else mat[c][row] = std::move(upd);
      }
    }
    mat.erase(mat.begin() + h);
    drop_row(mat, g);
    mods[i].degrees.erase(mods[i].degrees.begin() + g);
    mods[i + 1].degrees.erase(mods[i + 1].degrees.begin() + h);
    if (i + 1 < mats.size()) drop_row(mats[i + 1], h);
    if (i >= 1) mats[i - 1].erase(mats[i - 1].begin() + g);
  }
  while (mods.size() > 1 && mods.back().rank() == 0) {
    mods.pop_back();
    mats.pop_back();
  }
  FreeResolution out;
  out.ring = in.ring;
  out.modules = mods;
  for (std::size_t i = 0; i < mats.size(); ++i) {
    std::vector<Polynomial> cols;
    for (const Column& c : mats[i]) cols.push_back(join_column(ring, mods[i], c));
    out.differentials.push_back(std::move(cols));
  }
  return out;
}

bool is_minimal(const FreeResolution& r) {
  for (std::size_t i = 0; i < r.differentials.size(); ++i)
    for (const Polynomial& c : r.differentials[i])
      for (const auto& [row, p] : split_column(*r.ring, c))
        if (!p.is_zero() && p.leading().mon.is_one()) return false;
  return true;
}

bool composes_to_zero(const FreeResolution& r) {
  const Ring& ring = *r.ring;
  TermOrder ord(ring);
  for (std::size_t i = 0; i + 1 < r.differentials.size(); ++i) {
    TermOrder mod_ord(ring, pot_layout(r.modules[i].degrees));
    for (const Polynomial& col : r.differentials[i + 1]) {
      Polynomial acc;
      for (const auto& [row, p] : split_column(ring, col))
        acc = add(mod_ord, acc, mul(mod_ord, p, r.differentials[i][row]));
      if (!acc.is_zero()) return false;
    }
  }
  return true;
}

bool entries_homogeneous(const FreeResolution& r) {
  const Ring& ring = *r.ring;
  for (std::size_t i = 0; i < r.differentials.size(); ++i)
    for (std::uint32_t h = 0; h < r.differentials[i].size(); ++h)
      for (const auto& [row, p] : split_column(ring, r.differentials[i][h])) {
        MultiDegree want = r.modules[i + 1].degrees[h] - r.modules[i].degrees[row];
        for (const Term& t : p.terms())
          if (ring.degree(t.mon) != want) return false;
      }
  return true;
}

namespace {

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = start; v < n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

std::vector<FreeModule> koszul_shape(const std::vector<MultiDegree>& degrees) {
  if (degrees.empty()) throw std::invalid_argument("koszul_shape needs at least one degree");
  std::vector<FreeModule> out;
  for (std::size_t k = 0; k <= degrees.size(); ++k) {
    FreeModule f;
    for (const auto& s : subsets_of_size(degrees.size(), k)) {
      MultiDegree d(degrees[0].size());
      for (std::size_t j : s) d += degrees[j];
      f.degrees.push_back(d);
    }
    out.push_back(std::move(f));
  }
  return out;
}

FreeResolution koszul_resolution(RingPtr ring, const std::vector<Polynomial>& forms) {
  std::vector<MultiDegree> degrees;
  for (const Polynomial& f : forms) {
    auto d = homogeneous_degree(*ring, f);
    if (!d) throw std::invalid_argument("Koszul forms must be nonzero and homogeneous");
    degrees.push_back(*d);
  }
  FreeResolution r;
  r.ring = ring;
  r.modules = koszul_shape(degrees);
  const Field& k = ring->field();
  const std::size_t e = forms.size();
  for (std::size_t level = 1; level <= e; ++level) {
    auto src = subsets_of_size(e, level);
    auto dst = subsets_of_size(e, level - 1);
    std::map<std::vector<std::size_t>, std::uint32_t> index;
    for (std::uint32_t n = 0; n < dst.size(); ++n) index.emplace(dst[n], n);
    TermOrder ord(*ring, pot_layout(r.modules[level - 1].degrees));
    std::vector<Polynomial> cols;
    for (const auto& s : src) {
      std::vector<Term> terms;
      for (std::size_t p = 0; p < s.size(); ++p) {
        std::vector<std::size_t> rest = s;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
        std::uint32_t row = index.at(rest);
        Scalar sign = p % 2 ? k.neg(k.one()) : k.one();
        for (const Term& t : forms[s[p]].terms()) terms.push_back(Term{t.mon, row, k.mul(sign, t.coef)});
      }
      cols.push_back(make_polynomial(ord, std::move(terms)));
    }
    r.differentials.push_back(std::move(cols));
  }
  return r;
}

bool has_complete_intersection_hilbert_values(const Ideal& i, const std::vector<MultiDegree>& degrees) {
  const ProductSpace& sp = i.ring().space();
  MultiDegree total(sp.num_factors());
  for (const MultiDegree& d : degrees) total += d;
  MultiDegree ones(sp.num_factors());
  for (std::size_t b = 0; b < ones.size(); ++b) ones[b] = 1;
  std::vector<MultiDegree> probes = {total, total + ones, total + ones * 2};
  for (std::size_t b = 0; b < ones.size(); ++b) {
    MultiDegree eb(sp.num_factors());
    eb[b] = 1;
    probes.push_back(total + eb);
  }
  for (const MultiDegree& p : probes) {
    long expect = 0;
    for (std::size_t k = 0; k <= degrees.size(); ++k)
      for (const auto& s : subsets_of_size(degrees.size(), k)) {
        MultiDegree d = p;
        for (std::size_t j : s) d = d - degrees[j];
        long term = static_cast<long>(degree_slice_dimension(sp, d));
        expect += k % 2 ? -term : term;
      }
    if (static_cast<long>(quotient_slice_dimension(i, p)) != expect) return false;
  }
  return true;
}

std::vector<Polynomial> generic_forms(RingPtr ring, const std::vector<MultiDegree>& degrees, std::uint32_t seed,
                                      int attempts) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  TermOrder ord(*ring);
  for (int a = 0; a < attempts; ++a) {
    std::vector<Polynomial> forms;
    for (const MultiDegree& d : degrees) {
      std::vector<Term> terms;
      for (const Monomial& m : degree_slice_basis(*ring, d)) terms.push_back(Term{m, 0, ring->field().from_int(coef(rng))});
      forms.push_back(make_polynomial(ord, std::move(terms)));
    }
    if (std::any_of(forms.begin(), forms.end(), [](const Polynomial& f) { return f.is_zero(); })) continue;
    if (has_complete_intersection_hilbert_values(Ideal(ring, forms), degrees)) return forms;
  }
  throw std::runtime_error("could not draw a complete intersection of the requested degrees");
}

HomSliceComplex hom_slice_complex(const FreeResolution& r, const Ideal& m, ModuleKind kind, const MultiDegree& u,
                                  std::size_t first, std::size_t last) {
  const Ring& ring = *r.ring;
  const Field& k = ring.field();
  HomSliceComplex c;
  c.twist = u;
  c.first = first;
  last = std::min(last, r.modules.empty() ? 0 : r.modules.size() - 1);
  if (r.modules.empty() || first > last) return c;
  std::map<MultiDegree, SliceBasis> bases;
  auto basis_for = [&](const MultiDegree& d) -> const SliceBasis& {
    auto it = bases.find(d);
    if (it == bases.end()) it = bases.emplace(d, slice_basis(m, kind, d)).first;
    return it->second;
  };
  std::vector<std::vector<std::uint32_t>> offsets(last + 1);
  for (std::size_t j = first; j <= last; ++j) {
    std::uint32_t off = 0;
    for (const MultiDegree& a : r.modules[j].degrees) {
      offsets[j].push_back(off);
      off += static_cast<std::uint32_t>(basis_for(u + a).size());
    }
    c.dims.push_back(off);
    c.offsets.push_back(offsets[j]);
  }
  NormalFormCache nf(m);
  for (std::size_t j = first; j < last; ++j) {
    // entries of d_{j+1} grouped by row
    std::vector<std::vector<std::pair<std::uint32_t, Polynomial>>> by_row(r.modules[j].rank());
    for (std::uint32_t h = 0; h < r.differentials[j].size(); ++h)
      for (auto& [row, p] : split_column(ring, r.differentials[j][h])) by_row[row].emplace_back(h, p);
    std::vector<SparseRow> rows;
    for (std::uint32_t g = 0; g < r.modules[j].rank(); ++g) {
      const SliceBasis& src = basis_for(u + r.modules[j].degrees[g]);
      for (const Monomial& b : src.monomials) {
        std::map<std::uint32_t, Scalar> acc;
        auto add_at = [&](std::uint32_t col, const Scalar& s) {
          auto [it, ins] = acc.emplace(col, k.zero());
          it->second = k.add(it->second, s);
        };
        for (const auto& [h, p] : by_row[g]) {
          const SliceBasis& dst = basis_for(u + r.modules[j + 1].degrees[h]);
          std::uint32_t off = offsets[j + 1][h];
          if (kind == ModuleKind::Quotient) {
            for (const Term& t : p.terms())
              for (const Term& s : nf.of(t.mon * b).terms()) add_at(off + dst.index.at(s.mon), k.mul(t.coef, s.coef));
          } else {
            const Polynomial& tail = nf.of(b);
            for (const Term& t : p.terms()) {
              auto it = dst.index.find(t.mon * b);
              if (it != dst.index.end()) add_at(off + it->second, t.coef);
              for (const Term& s : tail.terms()) {
                auto jt = dst.index.find(t.mon * s.mon);
                if (jt != dst.index.end()) add_at(off + jt->second, k.neg(k.mul(t.coef, s.coef)));
              }
            }
          }
        }
        rows.push_back(finish_row(acc, k));
      }
    }
    c.maps.push_back(std::move(rows));
  }
  return c;
}

std::vector<std::size_t> complex_cohomology_dims(const Field& k, const HomSliceComplex& c) {
  std::vector<std::size_t> ranks;
  for (std::size_t j = 0; j < c.maps.size(); ++j) ranks.push_back(rank(k, c.dims[j + 1], c.maps[j]));
  std::vector<std::size_t> h;
  for (std::size_t j = 0; j < c.dims.size(); ++j) {
    std::size_t out = j < ranks.size() ? ranks[j] : 0;
    std::size_t in = j > 0 ? ranks[j - 1] : 0;
    h.push_back(c.dims[j] - out - in);
  }
  return h;
}

bool hom_complex_is_complex(const Field& k, const HomSliceComplex& c) {
  for (std::size_t j = 0; j + 1 < c.maps.size(); ++j)
    for (const SparseRow& row : c.maps[j]) {
      std::map<std::uint32_t, Scalar> acc;
      for (const auto& [mid, s] : row)
        for (const auto& [col, t] : c.maps[j + 1][mid]) {
          auto [it, ins] = acc.emplace(col, k.zero());
          it->second = k.add(it->second, k.mul(s, t));
        }
      if (!finish_row(acc, k).empty()) return false;
    }
  return true;
}

}  // namespace coxreg
