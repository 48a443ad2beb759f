#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coxreg/linalg.hpp"
#include "coxreg/ring.hpp"

namespace coxreg {

struct BuchbergerResult {
  /// Reduced, monic, sorted by increasing leading term.
  std::vector<Polynomial> basis;
  /// Indices of inputs that survived reduction against everything of lower
  /// degree. For homogeneous input this is a minimal generating subset.
  std::vector<std::size_t> minimal_inputs;
};

/// Buchberger's algorithm with sugar/normal selection and the Gebauer-Moeller
/// criteria. Works on ring elements and on free-module vectors alike; the
/// product criterion is used only for ideals.
BuchbergerResult buchberger(const TermOrder& ord, const std::vector<Polynomial>& inputs);

/// Full normal form of f modulo a Groebner basis.
Polynomial reduce(const TermOrder& ord, const Polynomial& f, const std::vector<Polynomial>& basis);

/// S-polynomial of two elements with leading terms on the same component.
Polynomial s_polynomial(const TermOrder& ord, const Polynomial& f, const Polynomial& g);

/// Buchberger criterion, checked from scratch: every S-polynomial reduces to 0.
bool is_groebner_basis(const TermOrder& ord, const std::vector<Polynomial>& basis);

/// Multihomogeneous ideal of a Cox ring with a write-once Groebner cache.
/// Copies share the cache.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> generators);
  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(RingPtr ring);
  static Ideal irrelevant(RingPtr ring);
  static Ideal from_monomials(RingPtr ring, const std::vector<Monomial>& mons);
  static Ideal parse(RingPtr ring, std::string_view text);  // ';'-separated generators

  const Ring& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  std::vector<MultiDegree> generator_degrees() const;

  /// Reduced Groebner basis for the ring's order; computed on first use.
  const std::vector<Polynomial>& groebner() const;
  /// Minimal homogeneous generating subset of the reduced basis.
  const std::vector<Polynomial>& minimal_generators() const;
  std::vector<Monomial> leading_monomials() const;

  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const;
  bool is_monomial() const;
  bool contains(const Polynomial& f) const;
  bool contains(const Ideal& other) const;
  bool equals(const Ideal& other) const;

  /// Set by saturate(); remembers the ideal it is saturated against.
  bool known_saturated_against(const Ideal& j) const;
  void mark_saturated_against(const Ideal& j);

  std::string to_string() const;

 private:
  struct Cache {
    std::once_flag gb_once;
    std::vector<Polynomial> gb;
    std::once_flag min_once;
    std::vector<Polynomial> minimal;
  };
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
  std::shared_ptr<const std::vector<Polynomial>> saturated_against_;
};

class InhomogeneousError : public std::invalid_argument {
 public:
  InhomogeneousError(const std::string& what, MultiDegree a, MultiDegree b)
      : std::invalid_argument(what), first(std::move(a)), second(std::move(b)) {}
  MultiDegree first, second;
};

const std::vector<Polynomial>& groebner_basis(const Ideal& i);
Polynomial normal_form(const Polynomial& f, const Ideal& i);

Ideal intersect(const Ideal& i, const Ideal& j);
/// Exact quotient f / g; throws when g does not divide f.
Polynomial divide_exact(const Ring& ring, const Polynomial& f, const Polynomial& g);
Ideal colon(const Ideal& i, const Polynomial& g);
Ideal colon(const Ideal& i, const Ideal& j);
Ideal saturate(const Ideal& i, const Ideal& j);
Ideal ideal_power(const Ideal& i, int m);
Ideal ideal_sum(const Ideal& i, const Ideal& j);
Ideal ideal_product(const Ideal& i, const Ideal& j);

/// Codimension of V(I) in X, from the Krull dimension of S / in(I).
int codimension(const Ideal& i);

/// Monomials of degree u that are not leading monomials of the basis.
std::vector<Monomial> standard_monomials(const Ideal& i, const MultiDegree& u);
std::uint64_t quotient_slice_dimension(const Ideal& i, const MultiDegree& u);
/// Basis of I_u obtained by multiplying generators into degree u and row
/// reducing; rows are coefficient vectors on degree_slice_basis(u).
std::vector<SparseRow> ideal_slice_basis(const Ideal& i, const MultiDegree& u);

/// Multiplication by a homogeneous form between graded pieces of a fixed
/// module: the cyclic quotient S/I or the ideal I.
enum class SliceKind { Quotient, Ideal };

/// Basis of a graded piece. Quotient pieces use standard monomials; ideal
/// pieces use the elements m - NF(m) for non-standard m, so the coordinates
/// of an element of I_u are its coefficients on non-standard monomials.
struct SliceBasis {
  MultiDegree degree;
  std::vector<Monomial> monomials;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
  std::size_t size() const { return monomials.size(); }
};
SliceBasis slice_basis(const Ideal& i, SliceKind kind, const MultiDegree& u);

struct GradedSliceMap {
  MultiDegree source, target;
  Polynomial multiplier;
  std::size_t source_dim = 0, target_dim = 0;
  /// One row per source basis element: its image in target coordinates.
  std::vector<SparseRow> rows;
};
GradedSliceMap slice_multiplication_map(const Ideal& i, SliceKind kind, const MultiDegree& v,
                                        const Polynomial& multiplier);

/// Memoized normal forms of monomials modulo a fixed ideal; not thread-safe,
/// meant to live inside a single computation.
class NormalFormCache {
 public:
  explicit NormalFormCache(const Ideal& i) : ideal_(i), ord_(i.ring()) {}
  const Polynomial& of(const Monomial& m);
  const Ideal& ideal() const { return ideal_; }

 private:
  const Ideal& ideal_;
  TermOrder ord_;
  std::unordered_map<Monomial, Polynomial, MonomialHash> memo_;
};

/// Rank of S_u -> H^0(P^1, O(D)) given by substituting binary forms (written
/// in the variables x0, x1 of P^1) for the variables of each block.
std::size_t substitution_map_rank(const Ring& ring, const std::vector<std::vector<Polynomial>>& forms,
                                  const Ring& line, const MultiDegree& u);

}  // namespace coxreg
