#include "coxreg/ring.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace coxreg {

int MultiDegree::total() const {
  int s = 0;
  for (int v : c_) s += v;
  return s;
}

static void check_same_length(const MultiDegree& a, const MultiDegree& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("multidegree length mismatch: " + a.to_string() + " vs " + b.to_string());
}

MultiDegree MultiDegree::operator+(const MultiDegree& o) const {
  check_same_length(*this, o);
  MultiDegree r = *this;
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
  return r;
}

MultiDegree MultiDegree::operator-(const MultiDegree& o) const {
  check_same_length(*this, o);
  MultiDegree r = *this;
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] -= o.c_[k];
  return r;
}

MultiDegree MultiDegree::operator-() const {
  MultiDegree r = *this;
  for (int& v : r.c_) v = -v;
  return r;
}

MultiDegree MultiDegree::operator*(int s) const {
  MultiDegree r = *this;
  for (int& v : r.c_) v *= s;
  return r;
}

MultiDegree& MultiDegree::operator+=(const MultiDegree& o) {
  *this = *this + o;
  return *this;
}

bool MultiDegree::all_at_least(int bound) const {
  return std::all_of(c_.begin(), c_.end(), [bound](int v) { return v >= bound; });
}

bool MultiDegree::dominates(const MultiDegree& o) const {
  check_same_length(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (c_[k] < o.c_[k]) return false;
  return true;
}

std::string MultiDegree::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(c_[k]);
  }
  return s + ")";
}

MultiDegree MultiDegree::parse(std::string_view text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (!t.empty() && t.front() == '(') {
    if (t.back() != ')') throw ParseError(t.size(), "unbalanced parenthesis in degree");
    t = t.substr(1, t.size() - 2);
  }
  if (t.empty()) throw ParseError(0, "empty degree");
  std::vector<int> c;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = t.find(',', pos);
    std::string piece = t.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(piece, &used);
    } catch (const std::exception&) {
      throw ParseError(pos, "expected an integer in degree, got '" + piece + "'");
    }
    if (used != piece.size()) throw ParseError(pos + used, "trailing characters in degree component");
    c.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return MultiDegree(std::move(c));
}

std::vector<MultiDegree> compositions(std::size_t parts, int total) {
  std::vector<MultiDegree> out;
  if (parts == 0 || total < 0) return out;
  MultiDegree cur(parts);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k + 1 == parts) {
      cur[k] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[k] = v;
      rec(k + 1, left - v);
    }
  };
  rec(0, total);
  return out;
}

Monomial Monomial::variable(int v, int power) {
  if (v < 0 || v >= kMaxVars) throw std::out_of_range("variable index out of range");
  if (power < 0 || power > 0xFFFF) throw std::overflow_error("exponent out of range");
  Monomial m;
  m.e[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(power);
  m.total = power;
  return m;
}

std::uint32_t Monomial::support_mask() const {
  std::uint32_t mask = 0;
  for (int i = 0; i < kMaxVars; ++i)
    if (e[static_cast<std::size_t>(i)]) mask |= 1u << i;
  return mask;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = static_cast<unsigned>(a.e[i]) + b.e[i];
    if (s > 0xFFFF) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  r.total = a.total + b.total;
  return r;
}

bool divides(const Monomial& a, const Monomial& b) {
  if (a.total > b.total) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (a.e[i] > b.e[i]) throw std::invalid_argument("monomial quotient: divisor does not divide");
    r.e[i] = static_cast<std::uint16_t>(b.e[i] - a.e[i]);
  }
  r.total = b.total - a.total;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    r.total += r.e[i];
  }
  return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::min(a.e[i], b.e[i]);
    r.total += r.e[i];
  }
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

Monomial power(const Monomial& a, int k) {
  if (k < 0) throw std::invalid_argument("negative monomial power");
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    long s = static_cast<long>(a.e[i]) * k;
    if (s > 0xFFFF) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = static_cast<std::uint16_t>(s);
    r.total += static_cast<int>(s);
  }
  return r;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::size_t h = 1469598103934665603ull;
  for (auto v : m.e) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return h;
}

ProductSpace::ProductSpace(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("a product space needs at least one factor");
  int v = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (factors_[k] < 1) throw std::invalid_argument("projective factors must have dimension >= 1");
    begin_.push_back(v);
    for (int i = 0; i <= factors_[k]; ++i) block_of_.push_back(k);
    v += factors_[k] + 1;
  }
  if (v > kMaxVars) throw std::invalid_argument("too many variables: " + std::to_string(v) + " > " + std::to_string(kMaxVars));
}

int ProductSpace::dim() const {
  int d = 0;
  for (int n : factors_) d += n;
  return d;
}

MultiDegree ProductSpace::canonical_degree() const {
  MultiDegree k(num_factors());
  for (std::size_t i = 0; i < num_factors(); ++i) k[i] = -factors_[i] - 1;
  return k;
}

MultiDegree ProductSpace::degree(const Monomial& m) const {
  MultiDegree d(num_factors());
  for (int v = 0; v < num_vars(); ++v) d[block_of_[static_cast<std::size_t>(v)]] += m.e[static_cast<std::size_t>(v)];
  return d;
}

std::vector<Monomial> ProductSpace::irrelevant_generators() const {
  std::vector<Monomial> out{Monomial{}};
  for (std::size_t k = 0; k < num_factors(); ++k) {
    std::vector<Monomial> next;
    for (const Monomial& m : out)
      for (int i = 0; i < block_size(k); ++i) next.push_back(m * Monomial::variable(block_begin(k) + i));
    out = std::move(next);
  }
  return out;
}

static std::string block_prefix(std::size_t k) {
  static const char* letters[] = {"x", "y", "z"};
  if (k < 3) return letters[k];
  return "w" + std::to_string(k + 1) + "_";
}

std::string ProductSpace::variable_name(int var) const {
  std::size_t k = block_of(var);
  return block_prefix(k) + std::to_string(var - begin_[k]);
}

std::optional<int> ProductSpace::variable_index(std::string_view name) const {
  for (std::size_t k = 0; k < num_factors(); ++k) {
    std::string prefix = block_prefix(k);
    if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) continue;
    std::string_view rest = name.substr(prefix.size());
    if (!std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      continue;
    if (rest.size() > 1 && rest.front() == '0') continue;
    int i = std::stoi(std::string(rest));
    if (i <= factors_[k]) return begin_[k] + i;
  }
  return std::nullopt;
}

ProductSpace ProductSpace::squared() const {
  std::vector<int> f = factors_;
  f.insert(f.end(), factors_.begin(), factors_.end());
  return ProductSpace(std::move(f));
}

std::string ProductSpace::to_string() const {
  std::string s = "P(";
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(factors_[k]);
  }
  return s + ")";
}

ProductSpace ProductSpace::parse(std::string_view text) {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (!t.empty() && (t.front() == 'P' || t.front() == 'p')) t = t.substr(1);
  MultiDegree f = MultiDegree::parse(t);
  return ProductSpace(f.components());
}

Ring::Ring(ProductSpace space, Field field, int aux_vars)
    : space_(std::move(space)), field_(field), aux_vars_(aux_vars), num_vars_(space_.num_vars() + aux_vars) {
  if (aux_vars < 0 || num_vars_ > kMaxVars) throw std::invalid_argument("too many variables in ring");
}

namespace {

// grevlex restricted to variables [lo, hi)
int grevlex_block(const Monomial& a, const Monomial& b, int lo, int hi) {
  int ta = 0, tb = 0;
  for (int i = lo; i < hi; ++i) {
    ta += a.e[static_cast<std::size_t>(i)];
    tb += b.e[static_cast<std::size_t>(i)];
  }
  if (ta != tb) return ta < tb ? -1 : 1;
  for (int i = hi - 1; i >= lo; --i) {
    auto x = a.e[static_cast<std::size_t>(i)], y = b.e[static_cast<std::size_t>(i)];
    if (x != y) return x > y ? -1 : 1;
  }
  return 0;
}

}  // namespace

int Ring::compare(const Monomial& a, const Monomial& b) const {
  if (aux_vars_ == 0) {
    if (a.total != b.total) return a.total < b.total ? -1 : 1;
    for (int i = num_vars_ - 1; i >= 0; --i) {
      auto x = a.e[static_cast<std::size_t>(i)], y = b.e[static_cast<std::size_t>(i)];
      if (x != y) return x > y ? -1 : 1;
    }
    return 0;
  }
  int ns = space_vars();
  if (int c = grevlex_block(a, b, ns, num_vars_)) return c;
  return grevlex_block(a, b, 0, ns);
}

bool Ring::involves_aux(const Monomial& m) const {
  for (int i = space_vars(); i < num_vars_; ++i)
    if (m.e[static_cast<std::size_t>(i)]) return true;
  return false;
}

std::string Ring::variable_name(int var) const {
  if (var < space_vars()) return space_.variable_name(var);
  if (aux_vars_ == 1) return "t";
  return "t" + std::to_string(var - space_vars());
}

std::optional<int> Ring::variable_index(std::string_view name) const {
  if (auto v = space_.variable_index(name)) return v;
  for (int i = space_vars(); i < num_vars_; ++i)
    if (variable_name(i) == name) return i;
  return std::nullopt;
}

RingPtr make_ring(ProductSpace space, Field field, int aux_vars) {
  return std::make_shared<const Ring>(std::move(space), field, aux_vars);
}

int TermOrder::compare(const Term& a, const Term& b) const {
  switch (layout_.kind) {
    case ModuleLayout::Kind::None:
      return ring_->compare(a.mon, b.mon);
    case ModuleLayout::Kind::PositionOverTerm:
      if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
      return ring_->compare(a.mon, b.mon);
    case ModuleLayout::Kind::TermOverPosition: {
      int wa = a.mon.total + layout_.shift_total[a.comp];
      int wb = b.mon.total + layout_.shift_total[b.comp];
      if (wa != wb) return wa < wb ? -1 : 1;
      if (int c = ring_->compare(a.mon, b.mon)) return c;
      if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
      return 0;
    }
  }
  return 0;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const Term& x = a.terms_[i];
    const Term& y = b.terms_[i];
    if (!(x.mon == y.mon) || x.comp != y.comp || !(x.coef == y.coef)) return false;
  }
  return true;
}

Polynomial make_polynomial(const TermOrder& ord, std::vector<Term> terms) {
  const Field& k = ord.field();
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return ord.compare(a, b) > 0; });
  std::vector<Term> out;
  for (Term& t : terms) {
    if (!out.empty() && ord.compare(out.back(), t) == 0) {
      out.back().coef = k.add(out.back().coef, t.coef);
      continue;
    }
    if (!out.empty() && k.is_zero(out.back().coef)) out.pop_back();
    out.push_back(std::move(t));
  }
  if (!out.empty() && k.is_zero(out.back().coef)) out.pop_back();
  return Polynomial(std::move(out));
}

Polynomial constant(const Ring& ring, const Scalar& c) {
  if (ring.field().is_zero(c)) return {};
  return Polynomial({Term{Monomial{}, 0, c}});
}

Polynomial monomial_poly(const Ring& ring, const Monomial& m, const Scalar& c) {
  if (ring.field().is_zero(c)) return {};
  return Polynomial({Term{m, 0, c}});
}

namespace {

template <class Transform>
Polynomial merge(const TermOrder& ord, const Polynomial& f, const Polynomial& g, Transform tr) {
  const Field& k = ord.field();
  std::vector<Term> out;
  out.reserve(f.size() + g.size());
  const auto& a = f.terms();
  const auto& b = g.terms();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    Term tb = tr(b[j]);
    if (i == a.size()) {
      out.push_back(std::move(tb));
      ++j;
      continue;
    }
    int c = ord.compare(a[i], tb);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(std::move(tb));
      ++j;
    } else {
      Scalar s = k.add(a[i].coef, tb.coef);
      if (!k.is_zero(s)) out.push_back(Term{a[i].mon, a[i].comp, std::move(s)});
      ++i;
      ++j;
    }
  }
  return Polynomial(std::move(out));
}

}  // namespace

Polynomial add(const TermOrder& ord, const Polynomial& f, const Polynomial& g) {
  return merge(ord, f, g, [](const Term& t) { return t; });
}

Polynomial sub(const TermOrder& ord, const Polynomial& f, const Polynomial& g) {
  const Field& k = ord.field();
  return merge(ord, f, g, [&](const Term& t) { return Term{t.mon, t.comp, k.neg(t.coef)}; });
}

Polynomial scale(const Field& k, const Polynomial& f, const Scalar& c) {
  if (k.is_zero(c)) return {};
  std::vector<Term> out = f.terms();
  for (Term& t : out) t.coef = k.mul(t.coef, c);
  return Polynomial(std::move(out));
}

Polynomial negate(const Field& k, const Polynomial& f) { return scale(k, f, k.neg(k.one())); }

Polynomial mul_term(const Field& k, const Polynomial& f, const Scalar& c, const Monomial& m) {
  if (k.is_zero(c)) return {};
  std::vector<Term> out;
  out.reserve(f.size());
  for (const Term& t : f.terms()) out.push_back(Term{t.mon * m, t.comp, k.mul(t.coef, c)});
  return Polynomial(std::move(out));
}

Polynomial sub_mul(const TermOrder& ord, const Polynomial& f, const Scalar& c, const Monomial& m,
                   const Polynomial& g) {
  const Field& k = ord.field();
  Scalar nc = k.neg(c);
  return merge(ord, f, g, [&](const Term& t) { return Term{t.mon * m, t.comp, k.mul(t.coef, nc)}; });
}

Polynomial mul(const TermOrder& ord, const Polynomial& f, const Polynomial& g) {
  const Field& k = ord.field();
  std::vector<Term> terms;
  terms.reserve(f.size() * g.size());
  for (const Term& a : f.terms())
    for (const Term& b : g.terms()) {
      if (a.comp != 0 && b.comp != 0) throw std::invalid_argument("cannot multiply two module vectors");
      terms.push_back(Term{a.mon * b.mon, a.comp + b.comp, k.mul(a.coef, b.coef)});
    }
  return make_polynomial(ord, std::move(terms));
}

Polynomial pow(const TermOrder& ord, const Polynomial& f, int k) {
  if (k < 0) throw std::invalid_argument("negative polynomial power");
  Polynomial r = constant(ord.ring(), ord.field().one());
  for (int i = 0; i < k; ++i) r = mul(ord, r, f);
  return r;
}

Polynomial make_monic(const Field& k, const Polynomial& f) {
  if (f.is_zero() || k.is_one(f.leading().coef)) return f;
  return scale(k, f, k.inv(f.leading().coef));
}

Polynomial reorder(const TermOrder& ord, const Polynomial& f) { return make_polynomial(ord, f.terms()); }

std::optional<MultiDegree> homogeneous_degree(const Ring& ring, const Polynomial& f) {
  if (f.is_zero()) return std::nullopt;
  MultiDegree d = ring.degree(f.leading().mon);
  for (const Term& t : f.terms())
    if (ring.degree(t.mon) != d) return std::nullopt;
  return d;
}

bool is_homogeneous(const Ring& ring, const Polynomial& f) {
  return f.is_zero() || homogeneous_degree(ring, f).has_value();
}

namespace {

class PolyParser {
 public:
  PolyParser(const Ring& ring, std::string_view s) : ring_(ring), k_(ring.field()), s_(s) {}

  Polynomial parse() {
    TermOrder ord(ring_);
    std::vector<Term> terms;
    skip();
    if (pos_ == s_.size()) throw ParseError(pos_, "empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      bool negative = false;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        negative = s_[pos_] == '-';
        ++pos_;
        skip();
      } else if (!first) {
        throw ParseError(pos_, "expected '+' or '-'");
      }
      Term t = term();
      if (negative) t.coef = k_.neg(t.coef);
      terms.push_back(std::move(t));
      first = false;
      skip();
    }
    return make_polynomial(ord, std::move(terms));
  }

 private:
  Term term() {
    Term t{Monomial{}, 0, k_.one()};
    bool more = true;
    while (more) {
      skip();
      if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
      char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        Rational q = number();
        skip();
        if (pos_ < s_.size() && s_[pos_] == '/') {
          ++pos_;
          skip();
          std::size_t at = pos_;
          Rational d = number();
          if (d == 0) throw ParseError(at, "zero denominator");
          q /= d;
        }
        t.coef = k_.mul(t.coef, k_.from_rational(q));
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t at = pos_;
        std::string name;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
          name += s_[pos_++];
        auto v = ring_.variable_index(name);
        if (!v) throw ParseError(at, "unknown variable '" + name + "'");
        skip();
        int e = 1;
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip();
          std::size_t eat = pos_;
          Rational q = number();
          if (q > 0xFFFF) throw ParseError(eat, "exponent too large");
          e = static_cast<int>(q.get_num().get_si());
        }
        t.mon = t.mon * Monomial::variable(*v, e);
      } else {
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
      }
      skip();
      more = pos_ < s_.size() && s_[pos_] == '*';
      if (more) ++pos_;
    }
    return t;
  }

  Rational number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(pos_, "expected a number");
    return Rational(std::string(s_.substr(start, pos_ - start)));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  const Ring& ring_;
  const Field& k_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const Ring& ring, std::string_view text) { return PolyParser(ring, text).parse(); }

std::string to_string(const Ring& ring, const Monomial& m) {
  std::string s;
  for (int v = 0; v < ring.num_vars(); ++v) {
    int e = m.e[static_cast<std::size_t>(v)];
    if (!e) continue;
    if (!s.empty()) s += "*";
    s += ring.variable_name(v);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

std::string to_string(const Ring& ring, const Polynomial& f) {
  if (f.is_zero()) return "0";
  const Field& k = ring.field();
  std::string out;
  for (const Term& t : f.terms()) {
    std::string c = k.to_string(t.coef);
    bool negative = c.front() == '-';
    if (negative) c = c.substr(1);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    std::string m = to_string(ring, t.mon);
    if (t.mon.is_one()) out += c;
    else if (c == "1") out += m;
    else out += c + "*" + m;
    if (t.comp != 0) out += "*e" + std::to_string(t.comp);
  }
  return out;
}

std::uint64_t degree_slice_dimension(const ProductSpace& space, const MultiDegree& u) {
  std::uint64_t d = 1;
  for (std::size_t k = 0; k < space.num_factors(); ++k) {
    if (u[k] < 0) return 0;
    int n = space.factors()[k];
    d *= binomial(static_cast<std::uint64_t>(u[k] + n), static_cast<std::uint64_t>(n)).get_ui();
  }
  return d;
}

std::vector<Monomial> degree_slice_basis(const Ring& ring, const MultiDegree& u) {
  const ProductSpace& sp = ring.space();
  std::vector<Monomial> out;
  if (!u.all_at_least(0)) return out;
  out.push_back(Monomial{});
  for (std::size_t k = 0; k < sp.num_factors(); ++k) {
    std::vector<Monomial> next;
    for (const MultiDegree& c : compositions(static_cast<std::size_t>(sp.block_size(k)), u[k])) {
      Monomial piece;
      for (int i = 0; i < sp.block_size(k); ++i)
        piece = piece * Monomial::variable(sp.block_begin(k) + i, c[static_cast<std::size_t>(i)]);
      for (const Monomial& m : out) next.push_back(m * piece);
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ring.compare(a, b) > 0; });
  return out;
}

}  // namespace coxreg
