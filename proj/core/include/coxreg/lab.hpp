#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "coxreg/cohomology.hpp"

namespace coxreg {

/// O(a) is nef iff every a_k >= 0, big and nef iff every a_k >= 1.
bool is_nef(const MultiDegree& a);
bool is_big_nef(const MultiDegree& a);

/// A divisor class on X, optionally with a defining form of that degree.
struct Divisor {
  MultiDegree degree;
  std::optional<Polynomial> form;

  /// Throws std::invalid_argument for a zero or inhomogeneous form.
  static Divisor of_form(const Ring& ring, Polynomial form);
  /// Throws std::invalid_argument when the form disagrees with the degree.
  void validate(const Ring& ring) const;
};

struct HypothesisWitness {
  std::vector<std::size_t> subset;
  std::size_t first = 0;
  MultiDegree twist;
};

struct HypothesisReport {
  bool holds = true;
  std::vector<HypothesisWitness> witnesses;
  std::size_t checked = 0;
};

/// L - (m+1) d_{s1} - d_{s2} - ... - d_{se} big and nef over indexed
/// e-subsets and each choice of s1.
HypothesisReport theorem_main_hypothesis(const std::vector<MultiDegree>& degrees, int e, int m, const MultiDegree& l);

class CodimensionMismatch : public std::invalid_argument {
 public:
  CodimensionMismatch(int expected, int actual);
  int expected, actual;
};

struct TheoremMainResult {
  HypothesisReport hypothesis;
  bool verified = false;
  /// K + L, the twist of I_Y^{m+1}.
  MultiDegree twist;
  /// h^i for i = 1..dim X, filled when the cohomology was computed.
  std::vector<std::uint64_t> higher;
};

/// When the hypothesis holds (or `compute_anyway`), computes h^i of the
/// saturated (m+1)-th power of I_Y twisted by K + L for 1 <= i <= dim X.
TheoremMainResult check_theorem_main(CohomologyEngine& engine, const RingPtr& ring,
                                     const std::vector<Divisor>& generators, int e, int m, const MultiDegree& l,
                                     bool compute_anyway = false, unsigned threads = 1);

enum class RegionPath { Corollary, Remark };

struct RegionWitness {
  std::vector<std::size_t> subset;
  MultiDegree u;
  MultiDegree twist;
};

struct RegionReport {
  bool holds = false;
  /// Remark path only: O_X is (K + L)-regular.
  bool structure_regular = true;
  std::vector<RegionWitness> witnesses;
};

/// L - d_{s1} - ... - d_{se} - u big and nef for all e-subsets, e = dim X - dimY,
/// and all u with |u| = dimY + 1. The corollary path throws
/// std::invalid_argument when a degree has a zero component.
RegionReport regularity_region_predicted(const ProductSpace& x, const std::vector<MultiDegree>& degrees, int dim_y,
                                         const MultiDegree& l, RegionPath path);

struct RegularityViolation {
  int i = 0;
  MultiDegree u;
  std::uint64_t dim = 0;
};

struct RegularityReport {
  bool regular = true;
  std::vector<RegularityViolation> violations;
};

/// h^i(M~ (x) O(L - u)) = 0 for 1 <= i <= dim X and |u| = i.
RegularityReport is_L_regular(CohomologyEngine& engine, const Module& m, const MultiDegree& l, unsigned threads = 1);
/// Same test for the line bundle O(a), by closed form.
RegularityReport line_bundle_regular(const ProductSpace& x, const MultiDegree& a, const MultiDegree& l);

struct SharpnessResult {
  KoszulChop chop;
  /// I_Y is twisted by K + sum d + N.
  MultiDegree twist;
  /// Smallest i >= 1 with nonzero h^i; unset when none (or the chop is invalid).
  std::optional<int> index;
  std::uint64_t dim = 0;
  /// h^{i+e-1}(K + N) at that index, the predicted value.
  std::uint64_t predicted = 0;
  /// The chop's h^0 when it is determined and nonzero: the nonvanishing
  /// pushed out of the range i >= 1.
  std::optional<std::uint64_t> h0;
};

/// Throws std::invalid_argument unless N is nef and not big, every degree is
/// componentwise >= 1, and K + N has some nonzero cohomology.
SharpnessResult sharpness_witness(const ProductSpace& x, const std::vector<MultiDegree>& degrees,
                                  const MultiDegree& n);

/// h^i(I_Y (x) O(twist)), i = 0..dim X, for Y cut out by generic forms of the given degrees.
std::vector<std::uint64_t> generic_ci_cohomology(CohomologyEngine& engine, const RingPtr& ring,
                                                 const std::vector<MultiDegree>& degrees, const MultiDegree& twist,
                                                 std::uint64_t seed = 1, unsigned threads = 1);

/// Adjoint convention: L1, L2 are the bundles of the statement, the map is
/// H^0(K + L1) (x) H^0(K + L2) -> H^0(2K + L1 + L2).
enum class MultMode { DirectRank, DiagonalVanishing };

struct MultiplicationRank {
  std::size_t rank = 0;
  std::uint64_t target = 0;
  bool surjective() const { return rank == target; }
};

/// Rank of H^0(O(a)) (x) H^0(O(b)) -> H^0(O(a + b)) from products of monomials.
MultiplicationRank multiplication_rank(const RingPtr& ring, const MultiDegree& a, const MultiDegree& b);

/// Ideal of the diagonal of X in X x X: 2x2 minors of each factor's coordinate pairs.
Ideal diagonal_ideal(const RingPtr& square, std::size_t factors);

inline constexpr int kDiagonalVarLimit = 8;

class ScaleGuard : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Diagonal mode throws ScaleGuard when X x X has more than
/// kDiagonalVarLimit variables and `allow_large` is false.
bool multiplication_map_check(CohomologyEngine& engine, const ProductSpace& x, const Field& field,
                              const MultiDegree& l1, const MultiDegree& l2, MultMode mode, bool allow_large = false);

/// L_j - A_1 - ... - A_d big and nef for both j.
bool multiplication_hypothesis(const MultiDegree& l1, const MultiDegree& l2, const std::vector<MultiDegree>& a);

struct WahlResult {
  bool vanishes = false;
  std::uint64_t h1 = 0;
  /// I_D^{m+1} = O(-(m+1), -(m+1)), so the sheaf is O(twist).
  MultiDegree twist;
};

/// h^1(P1 x P1, I_D^{m+1} (x) O(l1 - 2, l2 - 2)).
WahlResult wahl_vanishing_check(int m, int l1, int l2, const Field& field = Field::prime());

/// The diagonal power is principal of degree (m+1, m+1) and its graded
/// pieces agree with O(-(m+1), -(m+1)) on the box [0, box]^2.
bool wahl_reduction_holds(const Field& field, int m, int box);

}  // namespace coxreg
