#include "coxreg/linalg.hpp"

#include <algorithm>
#include <map>

namespace coxreg {
namespace {

struct ModPOps {
  using V = std::uint32_t;
  std::uint32_t p;
  static V zero() { return 0; }
  static bool is_zero(V a) { return a == 0; }
  V mul(V a, V b) const { return static_cast<V>(static_cast<std::uint64_t>(a) * b % p); }
  V sub(V a, V b) const { return a >= b ? a - b : a + p - b; }
  V inv(V a) const { return inverse_mod(a, p); }
  V neg(V a) const { return a == 0 ? 0 : p - a; }
  static V from(const Scalar& s) { return s.residue(); }
  static Scalar to(V v) { return Scalar(v); }
};

struct RationalOps {
  using V = Rational;
  static V zero() { return V(0); }
  static bool is_zero(const V& a) { return sgn(a) == 0; }
  static V mul(const V& a, const V& b) { return a * b; }
  static V sub(const V& a, const V& b) { return a - b; }
  static V inv(const V& a) { return 1 / a; }
  static V neg(const V& a) { return -a; }
  static V from(const Scalar& s) { return s.rational(); }
  static Scalar to(const V& v) { return Scalar(v); }
};

class EchelonBase {
 public:
  virtual ~EchelonBase() = default;
  virtual bool insert(const SparseRow& row) = 0;
  virtual std::size_t rank() const = 0;
  virtual std::vector<SparseRow> reduced_basis() const = 0;
};

template <class Ops>
class Echelon final : public EchelonBase {
  using V = typename Ops::V;
  using Row = std::vector<std::pair<std::uint32_t, V>>;

 public:
  Echelon(Ops ops, std::size_t columns)
      : ops_(std::move(ops)), pivot_of_(columns, -1), scratch_(columns, Ops::zero()) {}

  bool insert(const SparseRow& row) override {
    if (row.empty()) return false;
    std::size_t lo = row.front().first;
    std::size_t hi = row.back().first;
    for (const auto& [c, s] : row) scratch_[c] = Ops::from(s);
    for (std::size_t c = lo; c <= hi; ++c) {
      if (Ops::is_zero(scratch_[c])) continue;
      int piv = pivot_of_[c];
      if (piv < 0) {
        Row fresh;
        V scale = ops_.inv(scratch_[c]);
        for (std::size_t k = c; k <= hi; ++k) {
          if (Ops::is_zero(scratch_[k])) continue;
          fresh.emplace_back(static_cast<std::uint32_t>(k), ops_.mul(scratch_[k], scale));
          scratch_[k] = Ops::zero();
        }
        pivot_of_[c] = static_cast<int>(pivots_.size());
        pivots_.push_back(std::move(fresh));
        return true;
      }
      V factor = scratch_[c];
      const Row& pr = pivots_[static_cast<std::size_t>(piv)];
      for (const auto& [k, v] : pr) scratch_[k] = ops_.sub(scratch_[k], ops_.mul(factor, v));
      hi = std::max<std::size_t>(hi, pr.back().first);
    }
    return false;
  }

  std::size_t rank() const override { return pivots_.size(); }

  std::vector<SparseRow> reduced_basis() const override {
    // Back-substitute in decreasing pivot order.
    std::vector<std::uint32_t> order;
    for (const auto& r : pivots_) order.push_back(r.front().first);
    std::sort(order.begin(), order.end());
    std::map<std::uint32_t, Row> reduced;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      Row row = pivots_[static_cast<std::size_t>(pivot_of_[*it])];
      std::map<std::uint32_t, V> acc;
      for (auto& [k, v] : row) acc.emplace(k, v);
      for (auto& [col, prow] : reduced) {
        auto f = acc.find(col);
        if (f == acc.end() || Ops::is_zero(f->second)) continue;
        V factor = f->second;
        for (const auto& [k, v] : prow) {
          auto [pos, inserted] = acc.emplace(k, Ops::zero());
          pos->second = ops_.sub(pos->second, ops_.mul(factor, v));
        }
      }
      Row clean;
      for (auto& [k, v] : acc)
        if (!Ops::is_zero(v)) clean.emplace_back(k, v);
      reduced.emplace(*it, std::move(clean));
    }
    std::vector<SparseRow> out;
    for (auto& [col, row] : reduced) {
      SparseRow r;
      for (auto& [k, v] : row) r.emplace_back(k, Ops::to(v));
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  Ops ops_;
  std::vector<int> pivot_of_;
  std::vector<Row> pivots_;
  std::vector<V> scratch_;
};

std::unique_ptr<EchelonBase> make_echelon(const Field& field, std::size_t columns) {
  if (field.is_prime_field()) return std::make_unique<Echelon<ModPOps>>(ModPOps{field.characteristic()}, columns);
  return std::make_unique<Echelon<RationalOps>>(RationalOps{}, columns);
}

}  // namespace

struct RowEchelon::Impl {
  std::size_t columns;
  std::unique_ptr<EchelonBase> core;
};

RowEchelon::RowEchelon(const Field& field, std::size_t columns)
    : impl_(std::make_unique<Impl>(Impl{columns, make_echelon(field, columns)})) {}
RowEchelon::~RowEchelon() = default;
RowEchelon::RowEchelon(RowEchelon&&) noexcept = default;
RowEchelon& RowEchelon::operator=(RowEchelon&&) noexcept = default;

bool RowEchelon::insert(const SparseRow& row) { return impl_->core->insert(row); }
std::size_t RowEchelon::rank() const { return impl_->core->rank(); }
std::size_t RowEchelon::columns() const { return impl_->columns; }
std::vector<SparseRow> RowEchelon::reduced_basis() const { return impl_->core->reduced_basis(); }

std::size_t rank(const Field& field, std::size_t columns, const std::vector<SparseRow>& rows) {
  if (columns == 0 || rows.empty()) return 0;
  // Sparse rows first keeps fill-in down.
  std::vector<std::size_t> order(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a].size() < rows[b].size(); });
  RowEchelon ech(field, columns);
  for (std::size_t i : order) {
    ech.insert(rows[i]);
    if (ech.rank() == columns) break;
  }
  return ech.rank();
}

std::vector<SparseRow> left_kernel(const Field& field, std::size_t columns, const std::vector<SparseRow>& rows) {
  const std::size_t n = rows.size();
  RowEchelon ech(field, columns + n);
  for (std::size_t i = 0; i < n; ++i) {
    SparseRow aug = rows[i];
    aug.emplace_back(static_cast<std::uint32_t>(columns + i), field.one());
    ech.insert(aug);
  }
  std::vector<SparseRow> kernel;
  for (auto& r : ech.reduced_basis()) {
    if (r.front().first < columns) continue;
    SparseRow k;
    for (auto& [c, v] : r) k.emplace_back(static_cast<std::uint32_t>(c - columns), v);
    kernel.push_back(std::move(k));
  }
  return kernel;
}

bool coordinates_in_reduced_basis(const Field& field, const std::vector<SparseRow>& basis, const SparseRow& v,
                                  SparseRow& coords) {
  coords.clear();
  // In a reduced basis the coordinate on basis row i is v's entry at that
  // row's pivot column; verify by reconstruction.
  std::map<std::uint32_t, Scalar> residual;
  for (auto& [c, s] : v) residual.emplace(c, s);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto it = residual.find(basis[i].front().first);
    if (it == residual.end() || field.is_zero(it->second)) continue;
    Scalar f = it->second;
    coords.emplace_back(static_cast<std::uint32_t>(i), f);
    for (auto& [c, s] : basis[i]) {
      auto [pos, ins] = residual.emplace(c, field.zero());
      pos->second = field.sub(pos->second, field.mul(f, s));
    }
  }
  for (auto& [c, s] : residual)
    if (!field.is_zero(s)) return false;
  return true;
}

}  // namespace coxreg
