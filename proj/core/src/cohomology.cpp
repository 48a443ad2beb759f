#include "coxreg/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

#include "coxreg/parallel.hpp"

namespace coxreg {
namespace {

std::uint64_t to_u64(const BigInt& v) {
  if (sgn(v) < 0 || !v.fits_ulong_p()) throw std::overflow_error("dimension does not fit in 64 bits: " + v.get_str());
  return v.get_ui();
}

constexpr int kUnbounded = std::numeric_limits<int>::max();

// Decomposes Hom(F, S)_u into fine degrees alpha. The bucket complex of alpha
// keeps the generators g with alpha + phi_g >= 0; it depends only on which
// interval between consecutive values of -phi each alpha_v falls in.
class Buckets {
 public:
  Buckets(const BracketResolution& b, const ProductSpace& sp) : b_(b), sp_(sp) {
    const int n = sp.num_vars();
    thr_.assign(static_cast<std::size_t>(n), {});
    for (const auto& level : b.fine)
      for (const auto& phi : level)
        for (int v = 0; v < n; ++v) thr_[v].push_back(-phi[v]);
    for (auto& t : thr_) {
      std::sort(t.begin(), t.end());
      t.erase(std::unique(t.begin(), t.end()), t.end());
    }
    need_.resize(b.fine.size());
    for (std::size_t j = 0; j < b.fine.size(); ++j)
      for (const auto& phi : b.fine[j]) {
        std::vector<int> nd(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
          nd[v] = static_cast<int>(std::lower_bound(thr_[v].begin(), thr_[v].end(), -phi[v]) - thr_[v].begin());
        need_[j].push_back(std::move(nd));
      }
    by_row_.resize(b.entries.size());
    for (std::size_t j = 0; j < b.entries.size(); ++j) {
      by_row_[j].resize(b.fine[j].size());
      for (const auto& [g, h, c] : b.entries[j]) by_row_[j][g].emplace_back(h, c);
    }
  }

  int lo(int v, int q) const { return thr_[v][q]; }
  int hi(int v, int q) const { return q + 1 < static_cast<int>(thr_[v].size()) ? thr_[v][q + 1] : kUnbounded; }

  // Visits every pattern with a nonzero number of alpha of degree u.
  void for_each_pattern(const MultiDegree& u, const std::function<void(const std::vector<int>&, const BigInt&)>& f) const {
    const int n = sp_.num_vars();
    std::vector<std::vector<std::pair<std::vector<int>, BigInt>>> per_block;
    for (std::size_t k = 0; k < sp_.num_factors(); ++k) {
      std::vector<std::pair<std::vector<int>, BigInt>> options;
      int begin = sp_.block_begin(k), size = sp_.block_size(k);
      std::vector<int> q(static_cast<std::size_t>(size), 0);
      std::function<void(int)> rec = [&](int p) {
        if (p == size) {
          BigInt c = block_count(begin, q, u[k]);
          if (sgn(c) > 0) options.emplace_back(q, c);
          return;
        }
        for (int x = 0; x < static_cast<int>(thr_[begin + p].size()); ++x) {
          q[p] = x;
          rec(p + 1);
        }
      };
      rec(0);
      if (options.empty()) return;
      per_block.push_back(std::move(options));
    }
    std::vector<int> pattern(static_cast<std::size_t>(n));
    std::function<void(std::size_t, const BigInt&)> rec = [&](std::size_t k, const BigInt& count) {
      if (k == per_block.size()) {
        f(pattern, count);
        return;
      }
      for (const auto& [q, c] : per_block[k]) {
        std::copy(q.begin(), q.end(), pattern.begin() + sp_.block_begin(k));
        rec(k + 1, count * c);
      }
    };
    rec(0, BigInt(1));
  }

  // Every alpha of degree u in the pattern.
  std::vector<std::vector<int>> alphas(const std::vector<int>& pattern, const MultiDegree& u) const {
    const int n = sp_.num_vars();
    std::vector<std::vector<int>> out;
    std::vector<int> a(static_cast<std::size_t>(n));
    std::vector<int> remaining = u.components();
    std::function<void(int)> rec = [&](int v) {
      if (v == n) {
        out.push_back(a);
        return;
      }
      std::size_t k = sp_.block_of(v);
      bool last = v == sp_.block_begin(k) + sp_.block_size(k) - 1;
      int l = lo(v, pattern[v]), h = hi(v, pattern[v]);
      // remaining variables of the block must still reach their lower bounds
      int rest_lo = 0;
      for (int w = v + 1; w < sp_.block_begin(k) + sp_.block_size(k); ++w) rest_lo += lo(w, pattern[w]);
      int bottom = l, top = remaining[k] - rest_lo;
      if (h != kUnbounded) top = std::min(top, h - 1);
      if (last) {
        if (remaining[k] < l || remaining[k] > top) return;
        bottom = top = remaining[k];
      }
      for (int x = bottom; x <= top; ++x) {
        a[v] = x;
        remaining[k] -= x;
        rec(v + 1);
        remaining[k] += x;
      }
    };
    rec(0);
    return out;
  }

  std::vector<std::uint32_t> active(std::size_t j, const std::vector<int>& pattern) const {
    std::vector<std::uint32_t> out;
    if (j >= need_.size()) return out;
    for (std::uint32_t g = 0; g < need_[j].size(); ++g) {
      bool ok = true;
      for (std::size_t v = 0; v < pattern.size() && ok; ++v) ok = pattern[v] >= need_[j][g][v];
      if (ok) out.push_back(g);
    }
    return out;
  }

  // Rows of the bucket map C^j -> C^{j+1} restricted to active generators.
  std::vector<SparseRow> map_rows(std::size_t j, const std::vector<std::uint32_t>& src,
                                  const std::vector<std::uint32_t>& dst) const {
    std::vector<SparseRow> rows;
    if (j >= by_row_.size()) return rows;
    std::map<std::uint32_t, std::uint32_t> local;
    for (std::uint32_t c = 0; c < dst.size(); ++c) local.emplace(dst[c], c);
    for (std::uint32_t g : src) {
      SparseRow row;
      for (const auto& [h, c] : by_row_[j][g]) {
        auto it = local.find(h);
        if (it != local.end()) row.emplace_back(it->second, c);
      }
      std::sort(row.begin(), row.end(), [](auto& x, auto& y) { return x.first < y.first; });
      rows.push_back(std::move(row));
    }
    return rows;
  }

  struct Cohomology {
    std::size_t dim = 0;
    std::vector<std::uint32_t> gens;  // active generators of F_i
    std::vector<SparseRow> reps;      // cocycles over gens, independent modulo coboundaries
  };

  Cohomology cohomology(int i, const std::vector<int>& pattern, const Field& k, bool want_reps) const {
    Cohomology out;
    auto here = active(static_cast<std::size_t>(i), pattern);
    if (here.empty()) return out;
    auto next = active(static_cast<std::size_t>(i) + 1, pattern);
    auto out_rows = map_rows(static_cast<std::size_t>(i), here, next);
    std::vector<SparseRow> in_rows;
    if (i > 0) {
      auto prev = active(static_cast<std::size_t>(i) - 1, pattern);
      in_rows = map_rows(static_cast<std::size_t>(i) - 1, prev, here);
    }
    std::size_t r_out = next.empty() ? 0 : rank(k, next.size(), out_rows);
    std::size_t r_in = rank(k, here.size(), in_rows);
    out.dim = here.size() - r_out - r_in;
    if (want_reps && out.dim > 0) {
      out.gens = here;
      std::vector<SparseRow> kernel;
      if (next.empty()) {
        for (std::uint32_t c = 0; c < here.size(); ++c) kernel.push_back(SparseRow{{c, k.one()}});
      } else {
        kernel = left_kernel(k, next.size(), out_rows);
      }
      RowEchelon ech(k, here.size());
      for (const SparseRow& r : in_rows) ech.insert(r);
      for (const SparseRow& z : kernel)
        if (ech.insert(z)) out.reps.push_back(z);
    }
    return out;
  }

 private:
  // Integer points of the box of intervals q on one block with coordinate sum s.
  BigInt block_count(int begin, const std::vector<int>& q, int s) const {
    const int m = static_cast<int>(q.size());
    long long n = s;
    std::vector<long long> widths;
    for (int p = 0; p < m; ++p) {
      n -= lo(begin + p, q[p]);
      int h = hi(begin + p, q[p]);
      if (h != kUnbounded) widths.push_back(static_cast<long long>(h) - lo(begin + p, q[p]));
    }
    if (n < 0) return 0;
    BigInt total = 0;
    for (std::uint32_t mask = 0; mask < (1u << widths.size()); ++mask) {
      long long rest = n;
      int sign = 1;
      for (std::size_t b = 0; b < widths.size(); ++b)
        if (mask >> b & 1u) {
          rest -= widths[b];
          sign = -sign;
        }
      if (rest < 0) continue;
      BigInt c = binomial(static_cast<std::uint64_t>(rest + m - 1), static_cast<std::uint64_t>(m - 1));
      total += sign > 0 ? c : BigInt(-c);
    }
    return total;
  }

  const BracketResolution& b_;
  const ProductSpace& sp_;
  std::vector<std::vector<int>> thr_;
  std::vector<std::vector<std::vector<int>>> need_;
  std::vector<std::vector<std::vector<std::pair<std::uint32_t, Scalar>>>> by_row_;
};

std::size_t window_dim(const HomSliceComplex& c, int j) {
  if (j < static_cast<int>(c.first)) return 0;
  std::size_t k = static_cast<std::size_t>(j) - c.first;
  return k < c.dims.size() ? c.dims[k] : 0;
}

const std::vector<SparseRow>* window_map(const HomSliceComplex& c, int j) {
  if (j < static_cast<int>(c.first)) return nullptr;
  std::size_t k = static_cast<std::size_t>(j) - c.first;
  return k < c.maps.size() ? &c.maps[k] : nullptr;
}

std::size_t window_rank(const Field& k, const HomSliceComplex& c, int j) {
  const auto* m = window_map(c, j);
  return m ? rank(k, window_dim(c, j + 1), *m) : 0;
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::ExtEngine: return "ext-engine";
    case Provenance::KoszulChop: return "koszul-chop";
    case Provenance::LongExactSequence: return "long-exact-sequence";
  }
  return "unknown";
}

void CohomologyTable::set(int i, const MultiDegree& u, std::uint64_t dim, Provenance p) {
  if (i < 0) throw std::invalid_argument("cohomology index must be nonnegative");
  if (i > space_.dim() && dim != 0)
    throw std::logic_error("nonzero h^" + std::to_string(i) + " above the dimension of " + space_.to_string());
  entries_[{i, u}] = CohomologyEntry{dim, p};
}

std::optional<CohomologyEntry> CohomologyTable::get(int i, const MultiDegree& u) const {
  auto it = entries_.find({i, u});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t CohomologyTable::dim(int i, const MultiDegree& u) const {
  if (i > space_.dim()) return 0;
  auto e = get(i, u);
  if (!e) throw std::out_of_range("no entry h^" + std::to_string(i) + " at " + u.to_string());
  return e->dim;
}

std::uint64_t line_bundle_dim(const ProductSpace& x, int i, const MultiDegree& a) {
  if (a.size() != x.num_factors()) throw std::invalid_argument("twist " + a.to_string() + " does not match " + x.to_string());
  BigInt prod = 1;
  int slot = 0;
  for (std::size_t k = 0; k < x.num_factors(); ++k) {
    const int n = x.factors()[k], d = a[k];
    if (d >= 0) {
      prod *= binomial(static_cast<std::uint64_t>(d + n), static_cast<std::uint64_t>(n));
    } else if (d <= -n - 1) {
      prod *= binomial(static_cast<std::uint64_t>(-d - 1), static_cast<std::uint64_t>(n));
      slot += n;
    } else {
      return 0;
    }
  }
  return slot == i ? to_u64(prod) : 0;
}

CohomologyTable line_bundle_cohomology(const ProductSpace& x, const MultiDegree& a) {
  CohomologyTable t(x);
  for (int i = 0; i <= x.dim(); ++i) t.set(i, a, line_bundle_dim(x, i, a), Provenance::ClosedForm);
  return t;
}

BigInt line_bundle_euler(const ProductSpace& x, const MultiDegree& a) {
  BigInt prod = 1;
  for (std::size_t k = 0; k < x.num_factors(); ++k) {
    const int n = x.factors()[k];
    prod *= binomial_poly(a[k] + n, static_cast<std::uint64_t>(n));
  }
  return prod;
}

void Stabilization::validate() const {
  if (t_start < 1) throw std::invalid_argument("t_start must be at least 1");
  if (t_cap < t_start + 2) throw std::invalid_argument("t_cap must be at least t_start + 2");
}

namespace {
std::string stabilization_message(int index, const MultiDegree& u, const Stabilization& s,
                                  const std::vector<std::uint64_t>& values) {
  std::ostringstream o;
  o << "H^" << index << "_B at u=" << u.to_string() << " did not stabilize for t in " << s.t_start << ".." << s.t_cap
    << " (values";
  for (auto v : values) o << ' ' << v;
  o << "); raise the cap";
  return o.str();
}
}  // namespace

StabilizationNotReached::StabilizationNotReached(int index, MultiDegree twist, Stabilization s,
                                                 std::vector<std::uint64_t> values)
    : std::runtime_error(stabilization_message(index, twist, s, values)),
      index_(index),
      twist_(std::move(twist)),
      values_(std::move(values)) {}

CohomologyEngine::CohomologyEngine(Stabilization s) : stab_(s) { stab_.validate(); }

std::shared_ptr<const BracketResolution> CohomologyEngine::bracket_resolution(const Ring& ring, int t) {
  if (t < 1) throw std::invalid_argument("bracket power must be positive");
  auto key = std::make_tuple(ring.space().to_string(), ring.field().name(), t);
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = brackets_.find(key);
  if (it != brackets_.end()) return it->second;
  auto b = std::make_shared<BracketResolution>();
  b->t = t;
  RingPtr r = make_ring(ring.space(), ring.field());
  std::vector<Monomial> gens;
  for (const Monomial& m : ring.space().irrelevant_generators()) gens.push_back(power(m, t));
  b->res = resolve(Ideal::from_monomials(r, gens), ModuleKind::Quotient);
  const int n = ring.space().num_vars();
  b->fine.push_back({std::vector<int>(static_cast<std::size_t>(n), 0)});
  for (std::size_t j = 0; j < b->res.differentials.size(); ++j) {
    std::vector<std::vector<int>> level;
    std::vector<std::tuple<std::uint32_t, std::uint32_t, Scalar>> entries;
    for (std::uint32_t h = 0; h < b->res.differentials[j].size(); ++h) {
      const Polynomial& col = b->res.differentials[j][h];
      const Term& lead = col.leading();
      std::vector<int> phi = b->fine[j][lead.comp];
      for (int v = 0; v < n; ++v) phi[v] += lead.mon.e[static_cast<std::size_t>(v)];
      level.push_back(std::move(phi));
      for (const Term& term : col.terms()) entries.emplace_back(term.comp, h, term.coef);
    }
    b->fine.push_back(std::move(level));
    b->entries.push_back(std::move(entries));
  }
  brackets_.emplace(key, b);
  return b;
}

Ideal CohomologyEngine::saturation(const Ideal& i) {
  if (i.is_zero() || i.is_unit()) return i;
  std::string key = i.ring().space().to_string() + "|" + i.ring().field().name() + "|" + i.to_string();
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = saturations_.find(key);
    if (it != saturations_.end()) return it->second;
  }
  Ideal sat = saturate(i, Ideal::irrelevant(i.ring_ptr()));
  std::lock_guard<std::mutex> lock(mutex_);
  return saturations_.emplace(key, sat).first->second;
}

std::uint64_t CohomologyEngine::free_ext(const BracketResolution& b, const Ring& ring, int i, const MultiDegree& u) {
  if (i < 0 || i >= static_cast<int>(b.fine.size())) return 0;
  Buckets buckets(b, ring.space());
  BigInt total = 0;
  buckets.for_each_pattern(u, [&](const std::vector<int>& pattern, const BigInt& count) {
    auto h = buckets.cohomology(i, pattern, ring.field(), false);
    if (h.dim) total += count * BigInt(static_cast<unsigned long>(h.dim));
  });
  return to_u64(total);
}

std::uint64_t CohomologyEngine::quotient_ext(const BracketResolution& b, const Ideal& ideal, int i,
                                             const MultiDegree& u) {
  if (i < 0 || i >= static_cast<int>(b.fine.size())) return 0;
  const std::size_t first = static_cast<std::size_t>(std::max(0, i - 1));
  HomSliceComplex c = hom_slice_complex(b.res, ideal, ModuleKind::Quotient, u, first, static_cast<std::size_t>(i) + 1);
  const Field& k = ideal.ring().field();
  return window_dim(c, i) - window_rank(k, c, i) - window_rank(k, c, i - 1);
}

// 0 -> Hom(F, I) -> Hom(F, S) -> Hom(F, S/I) -> 0 in degree u: the free term
// is handled by buckets, the quotient term densely, and the connecting maps
// come from explicit cocycles of the free term reduced modulo I.
std::uint64_t CohomologyEngine::ideal_ext(const BracketResolution& b, const Ideal& ideal, int i, const MultiDegree& u) {
  if (i < 0 || i >= static_cast<int>(b.fine.size())) return 0;
  const Ring& ring = ideal.ring();
  const Field& k = ring.field();
  const FreeResolution& f = b.res;
  Buckets buckets(b, ring.space());
  const std::size_t first = static_cast<std::size_t>(std::max(0, i - 2));
  HomSliceComplex cq = hom_slice_complex(f, ideal, ModuleKind::Quotient, u, first, static_cast<std::size_t>(i));
  NormalFormCache nf(ideal);
  std::map<MultiDegree, SliceBasis> bases;
  auto basis_for = [&](const MultiDegree& d) -> const SliceBasis& {
    auto it = bases.find(d);
    if (it == bases.end()) it = bases.emplace(d, slice_basis(ideal, ModuleKind::Quotient, d)).first;
    return it->second;
  };
  // images in C_q^j of cocycles representing H^j(Hom(F, S)_u); also returns h^j
  auto reduced_classes = [&](int j, std::vector<SparseRow>& rows) -> std::uint64_t {
    BigInt dim = 0;
    const auto& offsets = cq.offsets[static_cast<std::size_t>(j) - cq.first];
    buckets.for_each_pattern(u, [&](const std::vector<int>& pattern, const BigInt& count) {
      auto h = buckets.cohomology(j, pattern, k, true);
      if (!h.dim) return;
      dim += count * BigInt(static_cast<unsigned long>(h.dim));
      for (const auto& alpha : buckets.alphas(pattern, u))
        for (const SparseRow& rep : h.reps) {
          std::map<std::uint32_t, Scalar> acc;
          for (const auto& [local, c] : rep) {
            std::uint32_t g = h.gens[local];
            Monomial m;
            for (std::size_t v = 0; v < alpha.size(); ++v) {
              int e = alpha[v] + b.fine[static_cast<std::size_t>(j)][g][v];
              m.e[v] = static_cast<std::uint16_t>(e);
              m.total += e;
            }
            const SliceBasis& sb = basis_for(u + f.modules[static_cast<std::size_t>(j)].degrees[g]);
            for (const Term& t : nf.of(m).terms()) {
              auto [it, ins] = acc.emplace(offsets[g] + sb.index.at(t.mon), k.zero());
              it->second = k.add(it->second, k.mul(c, t.coef));
            }
          }
          SparseRow row;
          for (auto& [col, s] : acc)
            if (!k.is_zero(s)) row.emplace_back(col, s);
          rows.push_back(std::move(row));
        }
    });
    return to_u64(dim);
  };
  std::vector<SparseRow> top_rows;
  std::uint64_t h_free = reduced_classes(i, top_rows);
  RowEchelon top(k, window_dim(cq, i));
  if (const auto* m = window_map(cq, i - 1))
    for (const SparseRow& r : *m) top.insert(r);
  for (const SparseRow& r : top_rows) top.insert(r);
  std::uint64_t result = h_free - top.rank();
  if (i >= 1) {
    std::vector<SparseRow> low_rows;
    reduced_classes(i - 1, low_rows);
    RowEchelon low(k, window_dim(cq, i - 1));
    if (const auto* m = window_map(cq, i - 2))
      for (const SparseRow& r : *m) low.insert(r);
    for (const SparseRow& r : low_rows) low.insert(r);
    result += window_dim(cq, i - 1) - low.rank();
  }
  return result;
}

std::uint64_t CohomologyEngine::ext_dim(const Module& m, int i, const MultiDegree& u, int t) {
  const Ring& ring = m.ring();
  if (ring.aux_vars() != 0) throw std::invalid_argument("cohomology needs a ring without auxiliary variables");
  if (u.size() != ring.space().num_factors())
    throw std::invalid_argument("twist " + u.to_string() + " does not match " + ring.space().to_string());
  auto b = bracket_resolution(ring, t);
  const Ideal& ideal = m.ideal;
  if (m.kind == ModuleKind::Quotient) {
    if (ideal.is_unit()) return 0;
    if (ideal.is_zero()) return free_ext(*b, ring, i, u);
    return quotient_ext(*b, ideal, i, u);
  }
  if (ideal.is_zero()) return 0;
  if (ideal.is_unit()) return free_ext(*b, ring, i, u);
  const auto& gens = ideal.minimal_generators();
  if (gens.size() == 1) return free_ext(*b, ring, i, u - ring.degree(gens[0].leading().mon));
  return ideal_ext(*b, ideal, i, u);
}

int stabilization_floor(const Module& m, const MultiDegree& u) {
  const ProductSpace& sp = m.ring().space();
  MultiDegree top(sp.num_factors());
  if (!m.ideal.is_unit())
    for (const Polynomial& g : m.ideal.minimal_generators()) {
      MultiDegree d = m.ring().degree(g.leading().mon);
      for (std::size_t k = 0; k < d.size(); ++k) top[k] = std::max(top[k], d[k]);
    }
  int floor = 1;
  for (std::size_t k = 0; k < sp.num_factors(); ++k) floor = std::max(floor, top[k] - u[k] - sp.factors()[k]);
  return floor;
}

std::uint64_t CohomologyEngine::local_cohomology_dim(const LocalCohomologyRequest& req) {
  req.stabilization.validate();
  // classes x^alpha with alpha_v < -t are invisible at level t, so start late
  // enough for the twist; the number of levels tried stays the same
  const int lift = std::max(0, stabilization_floor(req.module, req.twist) - req.stabilization.t_start);
  std::vector<std::uint64_t> values;
  for (int t = req.stabilization.t_start + lift; t <= req.stabilization.t_cap + lift; ++t) {
    values.push_back(ext_dim(req.module, req.index, req.twist, t));
    std::size_t n = values.size();
    if (n >= 3 && values[n - 1] == values[n - 2] && values[n - 2] == values[n - 3]) return values.back();
  }
  throw StabilizationNotReached(req.index, req.twist, req.stabilization, values);
}

std::uint64_t CohomologyEngine::local_cohomology_dim(const Module& m, int i, const MultiDegree& u) {
  return local_cohomology_dim(LocalCohomologyRequest{m, i, u, stab_});
}

std::uint64_t CohomologyEngine::sheaf_cohomology_dim(const Module& m, int i, const MultiDegree& u) {
  if (i < 0) throw std::invalid_argument("cohomology index must be nonnegative");
  const ProductSpace& sp = m.ring().space();
  if (i > sp.dim()) return 0;
  if (i >= 1) return local_cohomology_dim(m, i + 1, u);
  Ideal sat = saturation(m.ideal);
  std::uint64_t q = quotient_slice_dimension(sat, u);
  if (m.kind == ModuleKind::Ideal) return degree_slice_dimension(sp, u) - q;
  return q + local_cohomology_dim(Module::quotient(sat), 1, u);
}

CohomologyTable CohomologyEngine::sheaf_cohomology_table(const Module& m, const std::vector<MultiDegree>& twists,
                                                         unsigned threads) {
  const ProductSpace& sp = m.ring().space();
  std::vector<std::pair<int, MultiDegree>> cells;
  for (const MultiDegree& u : twists)
    for (int i = 0; i <= sp.dim(); ++i) cells.emplace_back(i, u);
  std::vector<std::uint64_t> dims(cells.size());
  parallel_for(cells.size(), threads,
               [&](std::size_t c) { dims[c] = sheaf_cohomology_dim(m, cells[c].first, cells[c].second); });
  CohomologyTable table(sp);
  for (std::size_t c = 0; c < cells.size(); ++c)
    table.set(cells[c].first, cells[c].second, dims[c],
              cells[c].first == 0 ? Provenance::LongExactSequence : Provenance::ExtEngine);
  return table;
}

BigInt euler_characteristic(const Module& m, const MultiDegree& u) {
  FreeResolution r = resolve(m.ideal, m.kind);
  BigInt chi = 0;
  for (std::size_t j = 0; j < r.modules.size(); ++j)
    for (const MultiDegree& a : r.modules[j].degrees) {
      BigInt c = line_bundle_euler(m.ring().space(), u - a);
      if (j % 2) chi -= c;
      else chi += c;
    }
  return chi;
}

KoszulChop koszul_chop(const ProductSpace& x, const std::vector<MultiDegree>& degrees, const MultiDegree& twist) {
  if (degrees.empty()) throw std::invalid_argument("koszul_chop needs at least one degree");
  for (const MultiDegree& d : degrees)
    if (d.size() != x.num_factors() || !d.all_at_least(1))
      throw std::invalid_argument("Koszul chop degrees must have every component >= 1, got " + d.to_string());
  const std::size_t e = degrees.size();
  MultiDegree sum(x.num_factors());
  for (const MultiDegree& d : degrees) sum += d;
  const MultiDegree last = twist - sum;
  KoszulChop out;
  out.valid = true;
  out.h0_valid = true;
  for (std::uint32_t mask = 1; mask + 1 < (1u << e); ++mask) {
    MultiDegree t = twist;
    for (std::size_t j = 0; j < e; ++j)
      if (mask >> j & 1u) t = t - degrees[j];
    bool higher = false;
    for (int i = 1; i <= x.dim(); ++i) higher = higher || line_bundle_dim(x, i, t) != 0;
    if (higher) {
      out.valid = false;
      out.obstructions.push_back(t);
    }
    if (line_bundle_dim(x, 0, t) != 0) out.h0_valid = false;
  }
  out.h0_valid = out.h0_valid && out.valid;
  out.dims.assign(static_cast<std::size_t>(x.dim()) + 1, std::nullopt);
  const int shift = static_cast<int>(e) - 1;
  for (int i = 0; i <= x.dim(); ++i) {
    if (!out.valid || (i == 0 && !out.h0_valid)) continue;
    out.dims[static_cast<std::size_t>(i)] = line_bundle_dim(x, i + shift, last);
  }
  return out;
}

}  // namespace coxreg
