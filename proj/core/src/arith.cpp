#include "coxreg/arith.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace coxreg {

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  BigInt r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt binomial_poly(std::int64_t top, std::uint64_t k) {
  BigInt num = 1;
  for (std::uint64_t j = 0; j < k; ++j) num *= BigInt(static_cast<long>(top - static_cast<std::int64_t>(j)));
  BigInt den;
  mpz_fac_ui(den.get_mpz_t(), k);
  return num / den;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw ArithmeticError("element is not invertible modulo p");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

Field Field::prime(std::uint32_t p) {
  if (p < 3 || p >= (1u << 31) || !is_prime(p))
    throw ArithmeticError("GF(p) requires an odd prime below 2^31, got " + std::to_string(p));
  return Field(p);
}

Scalar Field::zero() const { return is_prime_field() ? Scalar(0u) : Scalar(Rational(0)); }
Scalar Field::one() const { return is_prime_field() ? Scalar(1u) : Scalar(Rational(1)); }

Scalar Field::from_int(std::int64_t v) const {
  if (!is_prime_field()) return Scalar(Rational(static_cast<long>(v)));
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Scalar(static_cast<std::uint32_t>(r));
}

Scalar Field::from_rational(const Rational& q) const {
  if (!is_prime_field()) {
    Rational c = q;
    c.canonicalize();
    return Scalar(c);
  }
  BigInt num = q.get_num() % p_;
  BigInt den = q.get_den() % p_;
  if (num < 0) num += p_;
  if (den == 0) throw ArithmeticError("denominator vanishes modulo " + std::to_string(p_));
  auto n = static_cast<std::uint32_t>(num.get_ui());
  auto d = static_cast<std::uint32_t>(den.get_ui());
  return Scalar(static_cast<std::uint32_t>(static_cast<std::uint64_t>(n) * inverse_mod(d, p_) % p_));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (is_prime_field()) {
    std::uint32_t s = a.residue() + b.residue();
    return Scalar(s >= p_ ? s - p_ : s);
  }
  return Scalar(Rational(a.rational() + b.rational()));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (is_prime_field()) {
    std::uint32_t x = a.residue(), y = b.residue();
    return Scalar(x >= y ? x - y : x + p_ - y);
  }
  return Scalar(Rational(a.rational() - b.rational()));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (is_prime_field())
    return Scalar(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.residue()) * b.residue() % p_));
  return Scalar(Rational(a.rational() * b.rational()));
}

Scalar Field::neg(const Scalar& a) const {
  if (is_prime_field()) return Scalar(a.residue() == 0 ? 0u : p_ - a.residue());
  return Scalar(Rational(-a.rational()));
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw ArithmeticError("division by zero");
  if (is_prime_field()) return Scalar(inverse_mod(a.residue(), p_));
  return Scalar(Rational(1 / a.rational()));
}

bool Field::is_zero(const Scalar& a) const {
  return is_prime_field() ? a.residue() == 0 : a.rational() == 0;
}

bool Field::is_one(const Scalar& a) const {
  return is_prime_field() ? a.residue() == 1 : a.rational() == 1;
}

std::string Field::to_string(const Scalar& a) const {
  if (!is_prime_field()) return a.rational().get_str();
  std::int64_t v = a.residue();
  if (v > static_cast<std::int64_t>(p_ / 2)) v -= p_;
  return std::to_string(v);
}

std::string Field::name() const {
  return is_prime_field() ? "GF(" + std::to_string(p_) + ")" : "QQ";
}

QuadExt::QuadExt(Rational a, Rational b, std::int64_t d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ < 2) throw ArithmeticError("QuadExt radicand must be a square-free integer > 1");
  for (std::int64_t f = 2; f * f <= d_; ++f)
    if (d_ % (f * f) == 0) throw ArithmeticError("QuadExt radicand must be square-free");
  a_.canonicalize();
  b_.canonicalize();
}

void QuadExt::check_same(const QuadExt& o) const {
  if (d_ != o.d_) throw ArithmeticError("QuadExt operands live in different fields");
}

QuadExt QuadExt::operator+(const QuadExt& o) const {
  check_same(o);
  return QuadExt(a_ + o.a_, b_ + o.b_, d_);
}

QuadExt QuadExt::operator-(const QuadExt& o) const {
  check_same(o);
  return QuadExt(a_ - o.a_, b_ - o.b_, d_);
}

QuadExt QuadExt::operator*(const QuadExt& o) const {
  check_same(o);
  return QuadExt(a_ * o.a_ + b_ * o.b_ * d_, a_ * o.b_ + b_ * o.a_, d_);
}

QuadExt QuadExt::operator/(const QuadExt& o) const {
  check_same(o);
  Rational norm = o.a_ * o.a_ - o.b_ * o.b_ * d_;
  if (norm == 0) throw ArithmeticError("QuadExt division by zero");
  QuadExt num = *this * o.conjugate();
  return QuadExt(num.a_ / norm, num.b_ / norm, d_);
}

double QuadExt::approx() const {
  return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
}

std::string QuadExt::to_string() const {
  std::ostringstream os;
  if (b_ == 0) return a_.get_str();
  if (a_ != 0) os << a_.get_str() << (b_ > 0 ? " + " : " - ");
  else if (b_ < 0) os << "-";
  Rational mag = abs(b_);
  if (mag != 1) os << mag.get_str() << "*";
  os << "sqrt(" << d_ << ")";
  return os.str();
}

int quadext_sign(const QuadExt& x) {
  int sa = sgn(x.a());
  int sb = sgn(x.b());
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  Rational lhs = x.a() * x.a();
  Rational rhs = x.b() * x.b() * x.radicand();
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

namespace {

class QuadParser {
 public:
  QuadParser(const std::string& s, std::int64_t d) : s_(s), d_(d) {}

  QuadExt parse() {
    QuadExt acc = QuadExt::rational(0, d_);
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      QuadExt t = term();
      acc = sign > 0 ? acc + t : acc - t;
      first = false;
      skip();
    }
    if (first) fail("empty expression");
    return acc;
  }

 private:
  QuadExt term() {
    Rational coef = 1;
    bool have_number = false;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      coef = number();
      have_number = true;
      skip();
    }
    if (have_number && pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      skip();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        Rational den = number();
        if (den == 0) fail("zero denominator");
        coef /= den;
        skip();
      } else {
        radical();
        // c / sqrt(d) = (c/d) sqrt(d)
        return QuadExt(0, coef / d_, d_);
      }
    }
    if (have_number && pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      skip();
      radical();
      return QuadExt(0, coef, d_);
    }
    if (!have_number) {
      radical();
      return QuadExt(0, 1, d_);
    }
    return QuadExt(coef, 0, d_);
  }

  void radical() {
    const std::string key = "sqrt(";
    if (s_.compare(pos_, key.size(), key) != 0) fail("expected sqrt(" + std::to_string(d_) + ")");
    pos_ += key.size();
    Rational r = number();
    if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
    ++pos_;
    if (r != d_) fail("radical sqrt(" + r.get_str() + ") does not match field sqrt(" + std::to_string(d_) + ")");
    skip();
  }

  Rational number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Rational(s_.substr(start, pos_ - start));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ArithmeticError("quadratic literal '" + s_ + "' at position " + std::to_string(pos_) + ": " + what);
  }

  const std::string& s_;
  std::int64_t d_;
  std::size_t pos_ = 0;
};

}  // namespace

QuadExt parse_quadext(const std::string& text, std::int64_t d) { return QuadParser(text, d).parse(); }

}  // namespace coxreg
