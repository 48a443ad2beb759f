#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coxreg/arith.hpp"

namespace coxreg {

inline constexpr int kMaxVars = 24;

/// A degree in Z^l, i.e. a line bundle O(u) on a product of l projective spaces.
class MultiDegree {
 public:
  MultiDegree() = default;
  explicit MultiDegree(std::size_t l) : c_(l, 0) {}
  MultiDegree(std::initializer_list<int> c) : c_(c) {}
  explicit MultiDegree(std::vector<int> c) : c_(std::move(c)) {}

  std::size_t size() const { return c_.size(); }
  int operator[](std::size_t k) const { return c_[k]; }
  int& operator[](std::size_t k) { return c_[k]; }
  const std::vector<int>& components() const { return c_; }
  int total() const;

  MultiDegree operator+(const MultiDegree& o) const;
  MultiDegree operator-(const MultiDegree& o) const;
  MultiDegree operator-() const;
  MultiDegree operator*(int s) const;
  MultiDegree& operator+=(const MultiDegree& o);

  /// Componentwise comparison.
  bool all_at_least(int bound) const;
  bool dominates(const MultiDegree& o) const;  // every component >= o's

  friend bool operator==(const MultiDegree&, const MultiDegree&) = default;
  friend auto operator<=>(const MultiDegree& a, const MultiDegree& b) { return a.c_ <=> b.c_; }

  std::string to_string() const;  // "(1,2)"
  static MultiDegree parse(std::string_view text);  // "1,2" or "(1,2)"

 private:
  std::vector<int> c_;
};

/// All u in N^l with |u| = total.
std::vector<MultiDegree> compositions(std::size_t parts, int total);

/// Exponent vector over every variable of a ring (all blocks, then auxiliary).
struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  int total = 0;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.total == b.total && a.e == b.e; }

  static Monomial variable(int v, int power = 1);
  bool is_one() const { return total == 0; }
  std::uint32_t support_mask() const;
};

Monomial operator*(const Monomial& a, const Monomial& b);  // overflow-checked
bool divides(const Monomial& a, const Monomial& b);          // a | b
Monomial quotient(const Monomial& b, const Monomial& a);     // b / a, requires a | b
Monomial lcm(const Monomial& a, const Monomial& b);
Monomial gcd(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);
Monomial power(const Monomial& a, int k);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : std::runtime_error("at position " + std::to_string(position) + ": " + what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// The ambient X = P^{n_1} x ... x P^{n_l}: variable blocks of the Cox ring,
/// grading, canonical class and irrelevant ideal.
class ProductSpace {
 public:
  explicit ProductSpace(std::vector<int> factors);

  std::size_t num_factors() const { return factors_.size(); }
  const std::vector<int>& factors() const { return factors_; }
  int dim() const;
  int num_vars() const { return static_cast<int>(block_of_.size()); }
  int block_begin(std::size_t k) const { return begin_[k]; }
  int block_size(std::size_t k) const { return factors_[k] + 1; }
  std::size_t block_of(int var) const { return block_of_[static_cast<std::size_t>(var)]; }

  MultiDegree canonical_degree() const;
  MultiDegree zero_degree() const { return MultiDegree(num_factors()); }
  MultiDegree degree(const Monomial& m) const;

  /// All products x^{(1)}_{i_1} ... x^{(l)}_{i_l}.
  std::vector<Monomial> irrelevant_generators() const;

  /// x0.., y0.., z0.., then w4_0, w5_0, ...
  std::string variable_name(int var) const;
  std::optional<int> variable_index(std::string_view name) const;

  /// X x X as a 2l-fold product.
  ProductSpace squared() const;

  std::string to_string() const;                     // "P(2,2)"
  static ProductSpace parse(std::string_view text);  // "P(2,2)" or "2,2"

  friend bool operator==(const ProductSpace& a, const ProductSpace& b) { return a.factors_ == b.factors_; }

 private:
  std::vector<int> factors_;
  std::vector<int> begin_;
  std::vector<std::size_t> block_of_;
};

/// Graded reverse lexicographic on total degree, or a block order that first
/// compares the trailing auxiliary block (eliminating it) and then uses
/// grevlex on the remaining variables.
enum class MonomialOrderKind { GradedReverseLex, Elimination };

/// Cox ring of a ProductSpace over a Field, optionally extended by auxiliary
/// variables (placed after all block variables, degree ignored by the grading)
/// used for elimination.
class Ring {
 public:
  Ring(ProductSpace space, Field field, int aux_vars = 0);

  const ProductSpace& space() const { return space_; }
  const Field& field() const { return field_; }
  int num_vars() const { return num_vars_; }
  int space_vars() const { return space_.num_vars(); }
  int aux_vars() const { return aux_vars_; }
  MonomialOrderKind order() const {
    return aux_vars_ > 0 ? MonomialOrderKind::Elimination : MonomialOrderKind::GradedReverseLex;
  }

  /// <0, 0, >0 as a is smaller, equal, larger than b.
  int compare(const Monomial& a, const Monomial& b) const;
  MultiDegree degree(const Monomial& m) const { return space_.degree(m); }
  bool involves_aux(const Monomial& m) const;

  std::string variable_name(int var) const;
  std::optional<int> variable_index(std::string_view name) const;

 private:
  ProductSpace space_;
  Field field_;
  int aux_vars_;
  int num_vars_;
};

using RingPtr = std::shared_ptr<const Ring>;
RingPtr make_ring(ProductSpace space, Field field, int aux_vars = 0);

/// Coefficient * monomial * basis vector e_comp; comp stays 0 for ring elements.
struct Term {
  Monomial mon;
  std::uint32_t comp = 0;
  Scalar coef;
};

/// Layout of a free module S^r used when terms carry components.
struct ModuleLayout {
  enum class Kind { None, TermOverPosition, PositionOverTerm };
  Kind kind = Kind::None;
  /// Total degree of each basis vector, for term-over-position orders.
  std::vector<int> shift_total;
};

/// Term order on (monomial, component): the ring's monomial order, extended
/// to free modules by a TOP or POT rule. POT ranks lower component indices
/// higher.
class TermOrder {
 public:
  explicit TermOrder(const Ring& ring) : ring_(&ring) {}
  TermOrder(const Ring& ring, ModuleLayout layout) : ring_(&ring), layout_(std::move(layout)) {}

  int compare(const Term& a, const Term& b) const;
  const Ring& ring() const { return *ring_; }
  const Field& field() const { return ring_->field(); }
  const ModuleLayout& layout() const { return layout_; }

 private:
  const Ring* ring_;
  ModuleLayout layout_;
};

/// Exact-coefficient polynomial (or free-module vector): terms strictly
/// decreasing in the active term order, no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Term> sorted_terms) : terms_(std::move(sorted_terms)) {}

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::vector<Term>& mutable_terms() { return terms_; }

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  std::vector<Term> terms_;
};

/// Sorts, merges like terms, drops zeros.
Polynomial make_polynomial(const TermOrder& ord, std::vector<Term> terms);
Polynomial constant(const Ring& ring, const Scalar& c);
Polynomial monomial_poly(const Ring& ring, const Monomial& m, const Scalar& c);
Polynomial add(const TermOrder& ord, const Polynomial& f, const Polynomial& g);
Polynomial sub(const TermOrder& ord, const Polynomial& f, const Polynomial& g);
Polynomial scale(const Field& k, const Polynomial& f, const Scalar& c);
Polynomial negate(const Field& k, const Polynomial& f);
/// c * m * f; the order is multiplicative so no re-sort is needed.
Polynomial mul_term(const Field& k, const Polynomial& f, const Scalar& c, const Monomial& m);
/// f - c * m * g
Polynomial sub_mul(const TermOrder& ord, const Polynomial& f, const Scalar& c, const Monomial& m,
                   const Polynomial& g);
Polynomial mul(const TermOrder& ord, const Polynomial& f, const Polynomial& g);
Polynomial pow(const TermOrder& ord, const Polynomial& f, int k);
Polynomial make_monic(const Field& k, const Polynomial& f);
/// Re-sorts f for another order (e.g. moving between S and S[t]).
Polynomial reorder(const TermOrder& ord, const Polynomial& f);

/// Multidegree when every term shares one; the zero polynomial has none.
std::optional<MultiDegree> homogeneous_degree(const Ring& ring, const Polynomial& f);
bool is_homogeneous(const Ring& ring, const Polynomial& f);

Polynomial parse_polynomial(const Ring& ring, std::string_view text);
std::string to_string(const Ring& ring, const Polynomial& f);
std::string to_string(const Ring& ring, const Monomial& m);

/// dim S_u = prod_k C(u_k + n_k, n_k), zero when some u_k < 0.
std::uint64_t degree_slice_dimension(const ProductSpace& space, const MultiDegree& u);
/// Monomials of multidegree u, largest first in the ring's order.
std::vector<Monomial> degree_slice_basis(const Ring& ring, const MultiDegree& u);

}  // namespace coxreg
