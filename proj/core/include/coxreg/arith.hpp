#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace coxreg {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Binomial coefficient C(n, k); zero when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// Generalized binomial top*(top-1)*...*(top-k+1)/k! for any integer top.
/// This is the Hilbert polynomial C(d + n, n) of P^n evaluated at d when
/// called as binomial_poly(d + n, n).
BigInt binomial_poly(std::int64_t top, std::uint64_t k);

/// Element of the coefficient field. Which alternative is live is decided by
/// the Field that produced it; arithmetic never mixes the two.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(std::uint32_t residue) : value_(residue) {}
  explicit Scalar(Rational q) : value_(std::move(q)) {}

  bool is_residue() const { return value_.index() == 0; }
  std::uint32_t residue() const { return std::get<0>(value_); }
  const Rational& rational() const { return std::get<1>(value_); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.value_ == b.value_; }

 private:
  std::variant<std::uint32_t, Rational> value_;
};

class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficient field: GF(p) for an odd word-sized prime, or the rationals.
class Field {
 public:
  static constexpr std::uint32_t kDefaultPrime = 32003;

  static Field prime(std::uint32_t p = kDefaultPrime);
  static Field rationals() { return Field(0); }

  bool is_prime_field() const { return p_ != 0; }
  std::uint32_t characteristic() const { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t v) const;
  Scalar from_rational(const Rational& q) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;  // throws ArithmeticError on zero
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;

  /// Integers print as-is; GF(p) residues print in the symmetric range
  /// (-p/2, p/2] so that small signed inputs round-trip visibly.
  std::string to_string(const Scalar& a) const;
  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

bool is_prime(std::uint64_t n);
std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// a + b*sqrt(D) with rational a, b and a fixed square-free D > 1.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(Rational a, Rational b, std::int64_t d);
  static QuadExt rational(Rational a, std::int64_t d) { return QuadExt(std::move(a), 0, d); }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  std::int64_t radicand() const { return d_; }

  QuadExt operator+(const QuadExt& o) const;
  QuadExt operator-(const QuadExt& o) const;
  QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }
  QuadExt operator*(const QuadExt& o) const;
  QuadExt operator/(const QuadExt& o) const;  // throws ArithmeticError on zero
  QuadExt conjugate() const { return QuadExt(a_, -b_, d_); }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }

  /// Approximate value; for display only.
  double approx() const;
  std::string to_string() const;

 private:
  void check_same(const QuadExt& o) const;
  Rational a_ = 0;
  Rational b_ = 0;
  std::int64_t d_ = 2;
};

/// Exact sign of a + b*sqrt(D): compares a^2 against b^2 D when the
/// components disagree in sign.
int quadext_sign(const QuadExt& x);

/// Parses "2", "-3/4", "sqrt(6)", "2-sqrt(6)", "2+4/sqrt(6)", "1/3*sqrt(6)".
/// Every radical occurring must be sqrt(d).
QuadExt parse_quadext(const std::string& text, std::int64_t d);

}  // namespace coxreg
