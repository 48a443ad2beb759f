#include "coxreg/groebner.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace coxreg {
namespace {

// Total degree with auxiliary variables weighted 0, plus the component shift.
int weight(const TermOrder& ord, const Term& t) {
  const Ring& r = ord.ring();
  int w = t.mon.total;
  for (int v = r.space_vars(); v < r.num_vars(); ++v) w -= t.mon.e[static_cast<std::size_t>(v)];
  const auto& sh = ord.layout().shift_total;
  if (!sh.empty()) w += sh[t.comp];
  return w;
}

template <class Finder>
Polynomial reduce_with(const TermOrder& ord, Polynomial f, Finder find) {
  const Field& k = ord.field();
  std::vector<Term> rem;
  std::vector<Term> cur = std::move(f.mutable_terms());
  std::size_t head = 0;
  while (head < cur.size()) {
    const Term& lt = cur[head];
    const Polynomial* g = find(lt);
    if (!g) {
      rem.push_back(lt);
      ++head;
      continue;
    }
    Scalar c = k.neg(k.div(lt.coef, g->leading().coef));
    Monomial m = quotient(lt.mon, g->leading().mon);
    const auto& gt = g->terms();
    std::vector<Term> next;
    next.reserve(cur.size() - head + gt.size());
    std::size_t i = head + 1, j = 1;
    while (i < cur.size() || j < gt.size()) {
      if (j == gt.size()) {
        next.push_back(std::move(cur[i++]));
        continue;
      }
      Term tb{gt[j].mon * m, gt[j].comp, k.mul(gt[j].coef, c)};
      if (i == cur.size()) {
        next.push_back(std::move(tb));
        ++j;
        continue;
      }
      int cmp = ord.compare(cur[i], tb);
      if (cmp > 0) {
        next.push_back(std::move(cur[i++]));
      } else if (cmp < 0) {
        next.push_back(std::move(tb));
        ++j;
      } else {
        Scalar s = k.add(cur[i].coef, tb.coef);
        if (!k.is_zero(s)) next.push_back(Term{cur[i].mon, cur[i].comp, std::move(s)});
        ++i;
        ++j;
      }
    }
    cur = std::move(next);
    head = 0;
  }
  return Polynomial(std::move(rem));
}

struct Elem {
  Polynomial p;
  std::uint32_t mask = 0;
  int sugar = 0;
  bool active = true;
};

struct Pair {
  std::size_t i, j;
  Term lcm;
  int sugar;
};

class Engine {
 public:
  explicit Engine(const TermOrder& ord)
      : ord_(ord), k_(ord.field()), ideal_(ord.layout().kind == ModuleLayout::Kind::None) {}

  BuchbergerResult run(const std::vector<Polynomial>& inputs) {
    std::vector<std::pair<int, std::size_t>> queue;
    for (std::size_t n = 0; n < inputs.size(); ++n)
      if (!inputs[n].is_zero()) queue.emplace_back(weight(ord_, inputs[n].leading()), n);
    std::stable_sort(queue.begin(), queue.end(), [](auto& a, auto& b) { return a.first < b.first; });
    std::size_t next_input = 0;
    BuchbergerResult out;

    while (!pairs_.empty() || next_input < queue.size()) {
      std::size_t best = pairs_.size();
      for (std::size_t p = 0; p < pairs_.size(); ++p)
        if (best == pairs_.size() || better(pairs_[p], pairs_[best])) best = p;
      bool take_pair = best < pairs_.size() &&
                       (next_input == queue.size() || pairs_[best].sugar <= queue[next_input].first);
      if (take_pair) {
        Pair pr = std::move(pairs_[best]);
        pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
        Polynomial h = reduce_active(s_polynomial(ord_, g_[pr.i].p, g_[pr.j].p));
        if (!h.is_zero()) add(std::move(h), pr.sugar);
      } else {
        auto [w, idx] = queue[next_input++];
        Polynomial h = reduce_active(inputs[idx]);
        if (!h.is_zero()) {
          out.minimal_inputs.push_back(idx);
          add(std::move(h), w);
        }
      }
    }
    std::sort(out.minimal_inputs.begin(), out.minimal_inputs.end());
    out.basis = interreduce();
    return out;
  }

 private:
  bool better(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = ord_.compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }

  const Polynomial* find_divisor(const Term& t) const {
    std::uint32_t m = t.mon.support_mask();
    for (const Elem& e : g_) {
      if (!e.active) continue;
      const Term& lt = e.p.leading();
      if (lt.comp != t.comp || (e.mask & ~m) != 0) continue;
      if (divides(lt.mon, t.mon)) return &e.p;
    }
    return nullptr;
  }

  Polynomial reduce_active(const Polynomial& f) {
    return reduce_with(ord_, f, [this](const Term& t) { return find_divisor(t); });
  }

  void add(Polynomial h, int sugar) {
    h = make_monic(k_, h);
    Elem e;
    e.mask = h.leading().mon.support_mask();
    e.sugar = sugar;
    e.p = std::move(h);
    g_.push_back(std::move(e));
    update(g_.size() - 1);
  }

  // Gebauer-Moeller installation of the new element h.
  void update(std::size_t h) {
    const Term& th = g_[h].p.leading();
    struct Cand {
      std::size_t i;
      Monomial lcm;
      bool coprime;
      int sugar;
      bool present = true;
    };
    std::vector<Cand> cand;
    for (std::size_t i = 0; i < h; ++i) {
      const Elem& gi = g_[i];
      if (!gi.active || gi.p.leading().comp != th.comp) continue;
      const Monomial& mi = gi.p.leading().mon;
      Monomial l = lcm(mi, th.mon);
      int s = std::max(gi.sugar + l.total - mi.total, g_[h].sugar + l.total - th.mon.total);
      cand.push_back(Cand{i, l, ideal_ && coprime(mi, th.mon), s});
    }
    // chain criterion among the new pairs; the first of equal lcms survives
    for (std::size_t a = 0; a < cand.size(); ++a) {
      if (cand[a].coprime) continue;
      for (std::size_t b = 0; b < cand.size(); ++b) {
        if (b == a || !cand[b].present) continue;
        if (divides(cand[b].lcm, cand[a].lcm) && (b < a || !(cand[b].lcm == cand[a].lcm))) {
          cand[a].present = false;
          break;
        }
      }
    }
    // old pairs made redundant by h
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (Pair& p : pairs_) {
      bool drop = false;
      if (p.lcm.comp == th.comp && divides(th.mon, p.lcm.mon)) {
        Monomial li = lcm(g_[p.i].p.leading().mon, th.mon);
        Monomial lj = lcm(g_[p.j].p.leading().mon, th.mon);
        drop = !(li == p.lcm.mon) && !(lj == p.lcm.mon);
      }
      if (!drop) kept.push_back(std::move(p));
    }
    pairs_ = std::move(kept);
    for (const Cand& c : cand)
      if (c.present && !c.coprime) pairs_.push_back(Pair{c.i, h, Term{c.lcm, th.comp, Scalar{}}, c.sugar});
    for (std::size_t i = 0; i < h; ++i) {
      Elem& gi = g_[i];
      if (gi.active && gi.p.leading().comp == th.comp && divides(th.mon, gi.p.leading().mon)) gi.active = false;
    }
  }

  std::vector<Polynomial> interreduce() {
    std::vector<std::size_t> act;
    for (std::size_t i = 0; i < g_.size(); ++i)
      if (g_[i].active) act.push_back(i);
    std::vector<Polynomial> out;
    for (std::size_t i : act) {
      const Polynomial& p = g_[i].p;
      std::vector<Term> tail(p.terms().begin() + 1, p.terms().end());
      Polynomial t = reduce_with(ord_, Polynomial(std::move(tail)), [&](const Term& t) -> const Polynomial* {
        std::uint32_t m = t.mon.support_mask();
        for (std::size_t j : act) {
          if (j == i) continue;
          const Elem& e = g_[j];
          const Term& lt = e.p.leading();
          if (lt.comp == t.comp && (e.mask & ~m) == 0 && divides(lt.mon, t.mon)) return &e.p;
        }
        return nullptr;
      });
      std::vector<Term> terms{p.leading()};
      terms.insert(terms.end(), t.terms().begin(), t.terms().end());
      out.push_back(make_monic(k_, Polynomial(std::move(terms))));
    }
    std::sort(out.begin(), out.end(),
              [&](const Polynomial& a, const Polynomial& b) { return ord_.compare(a.leading(), b.leading()) < 0; });
    return out;
  }

  const TermOrder& ord_;
  const Field& k_;
  bool ideal_;
  std::vector<Elem> g_;
  std::vector<Pair> pairs_;
};

}  // namespace

BuchbergerResult buchberger(const TermOrder& ord, const std::vector<Polynomial>& inputs) {
  return Engine(ord).run(inputs);
}

Polynomial reduce(const TermOrder& ord, const Polynomial& f, const std::vector<Polynomial>& basis) {
  std::vector<std::uint32_t> masks;
  masks.reserve(basis.size());
  for (const Polynomial& g : basis) masks.push_back(g.is_zero() ? 0 : g.leading().mon.support_mask());
  return reduce_with(ord, f, [&](const Term& t) -> const Polynomial* {
    std::uint32_t m = t.mon.support_mask();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i].is_zero() || (masks[i] & ~m) != 0) continue;
      const Term& lt = basis[i].leading();
      if (lt.comp == t.comp && divides(lt.mon, t.mon)) return &basis[i];
    }
    return nullptr;
  });
}

Polynomial s_polynomial(const TermOrder& ord, const Polynomial& f, const Polynomial& g) {
  const Field& k = ord.field();
  const Term& a = f.leading();
  const Term& b = g.leading();
  if (a.comp != b.comp) throw std::invalid_argument("S-polynomial of vectors on different components");
  Monomial l = lcm(a.mon, b.mon);
  Polynomial fa = mul_term(k, f, k.inv(a.coef), quotient(l, a.mon));
  return sub_mul(ord, fa, k.inv(b.coef), quotient(l, b.mon), g);
}

bool is_groebner_basis(const TermOrder& ord, const std::vector<Polynomial>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (basis[i].leading().comp != basis[j].leading().comp) continue;
      if (!reduce(ord, s_polynomial(ord, basis[i], basis[j]), basis).is_zero()) return false;
    }
  return true;
}

// ---------------------------------------------------------------- Ideal

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (Polynomial& g : generators) {
    if (g.is_zero()) continue;
    MultiDegree d = ring_->degree(g.leading().mon);
    for (const Term& t : g.terms()) {
      MultiDegree e = ring_->degree(t.mon);
      if (e != d)
        throw InhomogeneousError("generator '" + coxreg::to_string(*ring_, g) + "' is not homogeneous: degrees " +
                                     d.to_string() + " and " + e.to_string(),
                                 d, e);
    }
    gens_.push_back(std::move(g));
  }
}

Ideal Ideal::unit(RingPtr ring) {
  Polynomial one = constant(*ring, ring->field().one());
  return Ideal(std::move(ring), {one});
}

Ideal Ideal::irrelevant(RingPtr ring) { return from_monomials(ring, ring->space().irrelevant_generators()); }

Ideal Ideal::from_monomials(RingPtr ring, const std::vector<Monomial>& mons) {
  std::vector<Polynomial> gens;
  for (const Monomial& m : mons) gens.push_back(monomial_poly(*ring, m, ring->field().one()));
  return Ideal(std::move(ring), std::move(gens));
}

Ideal Ideal::parse(RingPtr ring, std::string_view text) {
  std::vector<Polynomial> gens;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(start, end - start);
    if (piece.find_first_not_of(" \t\r\n") != std::string_view::npos) {
      try {
        gens.push_back(parse_polynomial(*ring, piece));
      } catch (const ParseError& e) {
        std::string msg = e.what();
        auto colon_at = msg.find(": ");
        throw ParseError(start + e.position(), colon_at == std::string::npos ? msg : msg.substr(colon_at + 2));
      }
    }
    start = end + 1;
  }
  return Ideal(std::move(ring), std::move(gens));
}

std::vector<MultiDegree> Ideal::generator_degrees() const {
  std::vector<MultiDegree> d;
  for (const Polynomial& g : gens_) d.push_back(ring_->degree(g.leading().mon));
  return d;
}

const std::vector<Polynomial>& Ideal::groebner() const {
  std::call_once(cache_->gb_once, [this] { cache_->gb = buchberger(TermOrder(*ring_), gens_).basis; });
  return cache_->gb;
}

const std::vector<Polynomial>& Ideal::minimal_generators() const {
  std::call_once(cache_->min_once, [this] {
    const auto& gb = groebner();
    for (std::size_t i : buchberger(TermOrder(*ring_), gb).minimal_inputs) cache_->minimal.push_back(gb[i]);
  });
  return cache_->minimal;
}

std::vector<Monomial> Ideal::leading_monomials() const {
  std::vector<Monomial> out;
  for (const Polynomial& g : groebner()) out.push_back(g.leading().mon);
  return out;
}

bool Ideal::is_unit() const {
  const auto& gb = groebner();
  return gb.size() == 1 && gb[0].leading().mon.is_one();
}

bool Ideal::is_monomial() const {
  for (const Polynomial& g : groebner())
    if (g.size() != 1) return false;
  return true;
}

bool Ideal::contains(const Polynomial& f) const { return reduce(TermOrder(*ring_), f, groebner()).is_zero(); }

bool Ideal::contains(const Ideal& other) const {
  for (const Polynomial& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

bool Ideal::equals(const Ideal& other) const { return groebner() == other.groebner(); }

bool Ideal::known_saturated_against(const Ideal& j) const {
  return saturated_against_ && *saturated_against_ == j.groebner();
}

void Ideal::mark_saturated_against(const Ideal& j) {
  saturated_against_ = std::make_shared<const std::vector<Polynomial>>(j.groebner());
}

std::string Ideal::to_string() const {
  if (gens_.empty()) return "(0)";
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += "; ";
    s += coxreg::to_string(*ring_, gens_[i]);
  }
  return s + ")";
}

const std::vector<Polynomial>& groebner_basis(const Ideal& i) { return i.groebner(); }

Polynomial normal_form(const Polynomial& f, const Ideal& i) { return reduce(TermOrder(i.ring()), f, i.groebner()); }

// ---------------------------------------------------------------- operations

Ideal intersect(const Ideal& i, const Ideal& j) {
  if (!(i.ring().space() == j.ring().space()) || !(i.ring().field() == j.ring().field()))
    throw std::invalid_argument("intersect: ideals live in different rings");
  if (i.is_zero() || j.is_zero()) return Ideal::zero(i.ring_ptr());
  if (i.is_unit()) return j;
  if (j.is_unit()) return i;
  const Ring& r = i.ring();
  Ring elim(r.space(), r.field(), 1);
  TermOrder ord(elim);
  const Field& k = r.field();
  Monomial t = Monomial::variable(r.space_vars());
  std::vector<Polynomial> inputs;
  for (const Polynomial& f : i.generators()) inputs.push_back(reorder(ord, mul_term(k, f, k.one(), t)));
  for (const Polynomial& g : j.generators()) {
    Polynomial gg = reorder(ord, g);
    inputs.push_back(sub(ord, gg, mul_term(k, gg, k.one(), t)));
  }
  std::vector<Polynomial> kept;
  TermOrder back(r);
  for (const Polynomial& p : buchberger(ord, inputs).basis)
    if (!elim.involves_aux(p.leading().mon)) kept.push_back(reorder(back, p));
  return Ideal(i.ring_ptr(), std::move(kept));
}

Polynomial divide_exact(const Ring& ring, const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  TermOrder ord(ring);
  const Field& k = ring.field();
  std::vector<Term> q;
  Polynomial p = f;
  while (!p.is_zero()) {
    const Term& lt = p.leading();
    if (!divides(g.leading().mon, lt.mon)) throw std::invalid_argument("divide_exact: divisor does not divide");
    Scalar c = k.div(lt.coef, g.leading().coef);
    Monomial m = quotient(lt.mon, g.leading().mon);
    q.push_back(Term{m, 0, c});
    p = sub_mul(ord, p, c, m, g);
  }
  return Polynomial(std::move(q));
}

Ideal colon(const Ideal& i, const Polynomial& g) {
  if (g.is_zero()) return Ideal::unit(i.ring_ptr());
  Ideal cap = intersect(i, Ideal(i.ring_ptr(), {g}));
  std::vector<Polynomial> gens;
  for (const Polynomial& h : cap.generators()) gens.push_back(divide_exact(i.ring(), h, g));
  return Ideal(i.ring_ptr(), std::move(gens));
}

Ideal colon(const Ideal& i, const Ideal& j) {
  std::optional<Ideal> acc;
  for (const Polynomial& g : j.minimal_generators()) {
    Ideal part = colon(i, g);
    acc = acc ? intersect(*acc, part) : part;
    if (acc->equals(i)) break;
  }
  return acc ? *acc : Ideal::unit(i.ring_ptr());
}

Ideal saturate(const Ideal& i, const Ideal& j) {
  if (i.known_saturated_against(j)) return i;
  Ideal cur = i;
  while (true) {
    Ideal next = colon(cur, j);
    if (next.equals(cur)) break;
    cur = next;
  }
  Ideal out(cur.ring_ptr(), cur.groebner());
  out.mark_saturated_against(j);
  return out;
}

Ideal ideal_power(const Ideal& i, int m) {
  if (m < 0) throw std::invalid_argument("ideal_power: negative exponent");
  if (m == 0) return Ideal::unit(i.ring_ptr());
  TermOrder ord(i.ring());
  const auto& g = i.generators();
  std::vector<Polynomial> out;
  std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
  if (g.empty()) return Ideal::zero(i.ring_ptr());
  while (true) {
    Polynomial p = g[idx[0]];
    for (std::size_t a = 1; a < idx.size(); ++a) p = mul(ord, p, g[idx[a]]);
    out.push_back(std::move(p));
    // next nondecreasing index tuple
    std::size_t a = idx.size();
    while (a > 0 && idx[a - 1] == g.size() - 1) --a;
    if (a == 0) break;
    std::size_t v = idx[a - 1] + 1;
    for (std::size_t b = a - 1; b < idx.size(); ++b) idx[b] = v;
  }
  return Ideal(i.ring_ptr(), std::move(out));
}

Ideal ideal_sum(const Ideal& i, const Ideal& j) {
  std::vector<Polynomial> g = i.generators();
  g.insert(g.end(), j.generators().begin(), j.generators().end());
  return Ideal(i.ring_ptr(), std::move(g));
}

Ideal ideal_product(const Ideal& i, const Ideal& j) {
  TermOrder ord(i.ring());
  std::vector<Polynomial> g;
  for (const Polynomial& a : i.generators())
    for (const Polynomial& b : j.generators()) g.push_back(mul(ord, a, b));
  return Ideal(i.ring_ptr(), std::move(g));
}

int codimension(const Ideal& i) {
  const Ring& r = i.ring();
  if (i.is_unit()) return r.space().dim() + 1;
  std::vector<std::uint32_t> lms;
  for (const Monomial& m : i.leading_monomials()) lms.push_back(m.support_mask());
  const int n = r.space_vars();
  int best = 0;
  std::function<void(int, std::uint32_t, int)> dfs = [&](int v, std::uint32_t set, int size) {
    if (size + (n - v) <= best) return;
    if (v == n) {
      best = size;
      return;
    }
    std::uint32_t with = set | (1u << v);
    bool ok = std::none_of(lms.begin(), lms.end(), [&](std::uint32_t m) { return (m & ~with) == 0; });
    if (ok) dfs(v + 1, with, size + 1);
    dfs(v + 1, set, size);
  };
  dfs(0, 0, 0);
  return n - best;
}

namespace {

// Depth-first over exponent vectors of degree u, pruning every prefix that is
// already divisible by a leading monomial.
std::vector<Monomial> standard_slice(const Ideal& i, const MultiDegree& u) {
  const Ring& r = i.ring();
  const ProductSpace& sp = r.space();
  std::vector<Monomial> out;
  if (!u.all_at_least(0) || i.is_unit()) return out;
  std::vector<Monomial> lms = i.leading_monomials();
  std::vector<int> remaining = u.components();
  Monomial cur;
  const int n = sp.num_vars();
  std::function<void(int)> rec = [&](int v) {
    if (v == n) {
      out.push_back(cur);
      return;
    }
    std::size_t b = sp.block_of(v);
    bool last = v == sp.block_begin(b) + sp.block_size(b) - 1;
    int lo = last ? remaining[b] : 0;
    for (int e = lo; e <= remaining[b]; ++e) {
      cur.e[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(e);
      cur.total += e;
      remaining[b] -= e;
      bool hit = e > 0 && std::any_of(lms.begin(), lms.end(), [&](const Monomial& l) { return divides(l, cur); });
      if (!hit) rec(v + 1);
      remaining[b] += e;
      cur.total -= e;
      cur.e[static_cast<std::size_t>(v)] = 0;
      if (hit) break;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return r.compare(a, b) > 0; });
  return out;
}

}  // namespace

std::vector<Monomial> standard_monomials(const Ideal& i, const MultiDegree& u) { return standard_slice(i, u); }

std::uint64_t quotient_slice_dimension(const Ideal& i, const MultiDegree& u) {
  if (!u.all_at_least(0)) return 0;
  return standard_monomials(i, u).size();
}

std::vector<SparseRow> ideal_slice_basis(const Ideal& i, const MultiDegree& u) {
  const Ring& r = i.ring();
  if (!u.all_at_least(0)) return {};
  std::vector<Monomial> cols = degree_slice_basis(r, u);
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
  for (std::uint32_t c = 0; c < cols.size(); ++c) index.emplace(cols[c], c);
  RowEchelon ech(r.field(), cols.size());
  for (const Polynomial& g : i.generators()) {
    MultiDegree rest = u - r.degree(g.leading().mon);
    for (const Monomial& m : degree_slice_basis(r, rest)) {
      SparseRow row;
      for (const Term& t : g.terms()) row.emplace_back(index.at(t.mon * m), t.coef);
      std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
      ech.insert(row);
      if (ech.rank() == cols.size()) break;
    }
  }
  return ech.reduced_basis();
}

SliceBasis slice_basis(const Ideal& i, SliceKind kind, const MultiDegree& u) {
  SliceBasis b;
  b.degree = u;
  if (!u.all_at_least(0)) return b;
  if (kind == SliceKind::Quotient) {
    b.monomials = standard_slice(i, u);
  } else {
    std::vector<Monomial> lms = i.leading_monomials();
    for (const Monomial& m : degree_slice_basis(i.ring(), u))
      if (std::any_of(lms.begin(), lms.end(), [&](const Monomial& l) { return divides(l, m); })) b.monomials.push_back(m);
  }
  for (std::uint32_t c = 0; c < b.monomials.size(); ++c) b.index.emplace(b.monomials[c], c);
  return b;
}

GradedSliceMap slice_multiplication_map(const Ideal& i, SliceKind kind, const MultiDegree& v,
                                        const Polynomial& multiplier) {
  auto d = homogeneous_degree(i.ring(), multiplier);
  if (!d) throw std::invalid_argument("slice multiplier must be a nonzero homogeneous form");
  GradedSliceMap out;
  out.source = v;
  out.target = v + *d;
  out.multiplier = multiplier;
  SliceBasis src = slice_basis(i, kind, v);
  SliceBasis dst = slice_basis(i, kind, out.target);
  out.source_dim = src.size();
  out.target_dim = dst.size();
  TermOrder ord(i.ring());
  const Field& k = i.ring().field();
  for (const Monomial& m : src.monomials) {
    Polynomial elem = monomial_poly(i.ring(), m, k.one());
    if (kind == SliceKind::Ideal) elem = sub(ord, elem, normal_form(elem, i));
    Polynomial img = mul(ord, multiplier, elem);
    if (kind == SliceKind::Quotient) img = normal_form(img, i);
    SparseRow row;
    for (const Term& t : img.terms()) {
      auto it = dst.index.find(t.mon);
      if (it != dst.index.end()) row.emplace_back(it->second, t.coef);
    }
    std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
    out.rows.push_back(std::move(row));
  }
  return out;
}

const Polynomial& NormalFormCache::of(const Monomial& m) {
  auto it = memo_.find(m);
  if (it != memo_.end()) return it->second;
  Polynomial nf = reduce(ord_, monomial_poly(ideal_.ring(), m, ideal_.ring().field().one()), ideal_.groebner());
  return memo_.emplace(m, std::move(nf)).first->second;
}

std::size_t substitution_map_rank(const Ring& ring, const std::vector<std::vector<Polynomial>>& forms,
                                  const Ring& line, const MultiDegree& u) {
  const ProductSpace& sp = ring.space();
  if (line.space().factors() != std::vector<int>{1})
    throw std::invalid_argument("substitution forms must live on P^1");
  if (forms.size() != sp.num_factors()) throw std::invalid_argument("one list of forms per block is required");
  std::vector<int> block_deg(sp.num_factors(), 0);
  for (std::size_t k = 0; k < sp.num_factors(); ++k) {
    if (static_cast<int>(forms[k].size()) != sp.block_size(k))
      throw std::invalid_argument("block " + std::to_string(k + 1) + " needs " + std::to_string(sp.block_size(k)) +
                                  " forms");
    std::optional<int> deg;
    for (const Polynomial& f : forms[k]) {
      if (f.is_zero()) continue;
      auto d = homogeneous_degree(line, f);
      if (!d) throw std::invalid_argument("substitution form is not homogeneous");
      if (deg && *deg != (*d)[0])
        throw std::invalid_argument("inconsistent form degrees in block " + std::to_string(k + 1));
      deg = (*d)[0];
    }
    block_deg[k] = deg.value_or(0);
  }
  if (!u.all_at_least(0)) return 0;
  int total = 0;
  for (std::size_t k = 0; k < sp.num_factors(); ++k) total += u[k] * block_deg[k];
  TermOrder ord(line);
  std::map<std::pair<int, int>, Polynomial> powers;
  auto power_of = [&](int var, int e) -> const Polynomial& {
    auto key = std::make_pair(var, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    std::size_t k = sp.block_of(var);
    const Polynomial& f = forms[k][static_cast<std::size_t>(var - sp.block_begin(k))];
    return powers.emplace(key, pow(ord, f, e)).first->second;
  };
  std::vector<SparseRow> rows;
  for (const Monomial& m : degree_slice_basis(ring, u)) {
    Polynomial img = constant(line, line.field().one());
    for (int v = 0; v < sp.num_vars() && !img.is_zero(); ++v) {
      int e = m.e[static_cast<std::size_t>(v)];
      if (e) img = mul(ord, img, power_of(v, e));
    }
    SparseRow row;
    for (const Term& t : img.terms()) row.emplace_back(static_cast<std::uint32_t>(t.mon.e[1]), t.coef);
    std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
    rows.push_back(std::move(row));
  }
  return rank(ring.field(), static_cast<std::size_t>(total + 1), rows);
}

}  // namespace coxreg
