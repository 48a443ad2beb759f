#include "coxreg/cone.hpp"

#include "coxreg/ring.hpp"

namespace coxreg {

QVec qvec(const Rational& a, const Rational& b, std::int64_t d) {
  return {QuadExt::rational(a, d), QuadExt::rational(b, d)};
}

QVec operator+(const QVec& a, const QVec& b) { return {a[0] + b[0], a[1] + b[1]}; }
QVec operator-(const QVec& a, const QVec& b) { return {a[0] - b[0], a[1] - b[1]}; }
QVec operator*(const QuadExt& s, const QVec& v) { return {s * v[0], s * v[1]}; }

std::string to_string(const QVec& v, const std::array<std::string, 2>& basis) {
  return "(" + v[0].to_string() + ")" + basis[0] + " + (" + v[1].to_string() + ")" + basis[1];
}

ConeQD::ConeQD(QVec ray1, QVec ray2, std::array<std::string, 2> basis)
    : rays_{std::move(ray1), std::move(ray2)}, basis_(std::move(basis)) {
  det_ = rays_[0][0] * rays_[1][1] - rays_[0][1] * rays_[1][0];
  if (det_.is_zero()) throw DegenerateCone("cone rays are linearly dependent");
}

std::array<QuadExt, 2> ConeQD::coordinates(const QVec& v) const {
  // Cramer's rule on [ray1 ray2] (a, b)^T = v.
  QuadExt a = (v[0] * rays_[1][1] - v[1] * rays_[1][0]) / det_;
  QuadExt b = (rays_[0][0] * v[1] - rays_[0][1] * v[0]) / det_;
  return {a, b};
}

bool cone_contains(const ConeQD& c, const QVec& v) {
  auto [a, b] = c.coordinates(v);
  return quadext_sign(a) >= 0 && quadext_sign(b) >= 0;
}

bool shifted_cone_subset(const QVec& apex1, const ConeQD& c1, const QVec& apex2, const ConeQD& c2) {
  return cone_contains(c2, c1.ray(0)) && cone_contains(c2, c1.ray(1)) && cone_contains(c2, apex1 - apex2);
}

QVec translated_cone_intersection(const ConeQD& c, const std::vector<QVec>& apexes) {
  if (apexes.empty()) throw std::invalid_argument("translated_cone_intersection: no cones");
  auto best = c.coordinates(apexes.front());
  for (const QVec& p : apexes) {
    auto co = c.coordinates(p);
    for (int k = 0; k < 2; ++k)
      if (quadext_sign(co[k] - best[k]) > 0) best[k] = co[k];
  }
  return best[0] * c.ray(0) + best[1] * c.ray(1);
}

K3Comparison k3_comparison(const ConeQD& nef, const std::vector<QVec>& shifts, const QVec& q) {
  K3Comparison out;
  out.apex = translated_cone_intersection(nef, shifts);
  out.q = q;
  out.difference = out.apex - q;
  out.difference_coordinates = nef.coordinates(out.difference);
  out.contained = shifted_cone_subset(out.apex, nef, q, nef);
  return out;
}

BlowupComparison blowup_comparison(int d, std::int64_t radicand) {
  if (d < 1) throw std::invalid_argument("blowup_comparison: d must be positive");
  BlowupComparison out;
  out.d = d;
  ConeQD nef(qvec(1, 0, radicand), qvec(0, 1, radicand), {"P1", "P2"});
  QVec canonical = qvec(-1, -d, radicand);
  // Lattice points of the nef cone that are big: P2 is big, P1 is not.
  QVec big = qvec(0, 1, radicand);
  std::vector<QVec> shifts;
  for (const MultiDegree& u : compositions(2, d))
    if (u[0] <= 1 && u[1] <= d * (d + 1) / 2) shifts.push_back(qvec(u[0], u[1], radicand) + big);
  out.product_apex = canonical + translated_cone_intersection(nef, shifts);
  out.ample_apex = canonical + qvec(d, d, radicand) + big;
  out.ample_nef_apex = canonical + qvec(d, d, radicand);
  out.ample_inside_product = shifted_cone_subset(out.ample_apex, nef, out.product_apex, nef);
  out.product_inside_ample = shifted_cone_subset(out.product_apex, nef, out.ample_apex, nef);
  out.nef_worded_inside_product = shifted_cone_subset(out.ample_nef_apex, nef, out.product_apex, nef);
  out.witness = out.product_apex;
  out.witness_separates = cone_contains(nef, out.witness - out.product_apex) &&
                          !cone_contains(nef, out.witness - out.ample_apex);
  return out;
}

}  // namespace coxreg
