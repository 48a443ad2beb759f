#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "coxreg/arith.hpp"

namespace coxreg {

/// A class in a rank-2 Neron-Severi lattice tensored with Q(sqrt D).
using QVec = std::array<QuadExt, 2>;

QVec qvec(const Rational& a, const Rational& b, std::int64_t d);
QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator*(const QuadExt& s, const QVec& v);
std::string to_string(const QVec& v, const std::array<std::string, 2>& basis);

class DegenerateCone : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The cone spanned by two independent rays.
class ConeQD {
 public:
  /// Throws DegenerateCone when the rays are dependent.
  ConeQD(QVec ray1, QVec ray2, std::array<std::string, 2> basis = {"e1", "e2"});

  const QVec& ray(std::size_t k) const { return rays_[k]; }
  const std::array<std::string, 2>& basis() const { return basis_; }
  std::int64_t radicand() const { return rays_[0][0].radicand(); }

  /// (a, b) with v = a ray1 + b ray2.
  std::array<QuadExt, 2> coordinates(const QVec& v) const;

 private:
  std::array<QVec, 2> rays_;
  std::array<std::string, 2> basis_;
  QuadExt det_;
};

bool cone_contains(const ConeQD& c, const QVec& v);
/// apex1 + C1 is inside apex2 + C2.
bool shifted_cone_subset(const QVec& apex1, const ConeQD& c1, const QVec& apex2, const ConeQD& c2);
/// Apex of the intersection of the translates apex_i + C; throws on an empty list.
QVec translated_cone_intersection(const ConeQD& c, const std::vector<QVec>& apexes);

/// K3 quartic with Picard lattice <H, C>: the region where the adjoint
/// multiplication maps are surjective versus Q = [q] + Nef.
struct K3Comparison {
  QVec apex;
  QVec q;
  QVec difference;
  std::array<QuadExt, 2> difference_coordinates;
  bool contained = false;
};
/// `shifts` are the classes u.P over |u| = d; the region is their translated intersection.
K3Comparison k3_comparison(const ConeQD& nef, const std::vector<QVec>& shifts, const QVec& q);

/// Blow-up of P^d at a point in the basis (P1, P2) of the two nef generators.
struct BlowupComparison {
  int d = 0;
  /// Adjoint region from the product embedding: apex of K + sum over u of [u.P] + (big and nef).
  QVec product_apex;
  /// Adjoint region from L - dA big and nef with A = P1 + P2.
  QVec ample_apex;
  /// Same with N only nef, as the regions are worded in prose.
  QVec ample_nef_apex;
  bool ample_inside_product = false;
  bool product_inside_ample = false;
  bool nef_worded_inside_product = false;
  QVec witness;
  bool witness_separates = false;
};
BlowupComparison blowup_comparison(int d, std::int64_t radicand = 2);

}  // namespace coxreg
