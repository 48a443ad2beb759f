#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "coxreg/resolution.hpp"

namespace coxreg {

enum class Provenance { ClosedForm, ExtEngine, KoszulChop, LongExactSequence };
std::string_view to_string(Provenance p);

struct CohomologyEntry {
  std::uint64_t dim = 0;
  Provenance provenance = Provenance::ClosedForm;
};

/// h^i of twists of one sheaf, keyed by (i, u).
class CohomologyTable {
 public:
  explicit CohomologyTable(ProductSpace space) : space_(std::move(space)) {}

  const ProductSpace& space() const { return space_; }
  /// Throws std::logic_error for a nonzero entry above dim X.
  void set(int i, const MultiDegree& u, std::uint64_t dim, Provenance p);
  std::optional<CohomologyEntry> get(int i, const MultiDegree& u) const;
  /// Zero for indices above dim X; throws std::out_of_range for a missing entry.
  std::uint64_t dim(int i, const MultiDegree& u) const;
  const std::map<std::pair<int, MultiDegree>, CohomologyEntry>& entries() const { return entries_; }

 private:
  ProductSpace space_;
  std::map<std::pair<int, MultiDegree>, CohomologyEntry> entries_;
};

/// Bott formula on each factor combined by Kuenneth.
std::uint64_t line_bundle_dim(const ProductSpace& x, int i, const MultiDegree& a);
CohomologyTable line_bundle_cohomology(const ProductSpace& x, const MultiDegree& a);
/// chi(O(a)) = prod_k C(a_k + n_k, n_k).
BigInt line_bundle_euler(const ProductSpace& x, const MultiDegree& a);

/// An ideal I, or the cyclic quotient S/I.
struct Module {
  Ideal ideal;
  ModuleKind kind;

  static Module quotient(Ideal i) { return Module{std::move(i), ModuleKind::Quotient}; }
  static Module of_ideal(Ideal i) { return Module{std::move(i), ModuleKind::Ideal}; }
  /// S itself, as the quotient by the zero ideal.
  static Module structure(RingPtr ring) { return quotient(Ideal::zero(std::move(ring))); }
  const Ring& ring() const { return ideal.ring(); }
};

struct Stabilization {
  int t_start = 2;
  int t_cap = 8;
  /// Throws std::invalid_argument unless t_start >= 1 and t_cap >= t_start + 2.
  void validate() const;
};

struct LocalCohomologyRequest {
  Module module;
  int index = 0;
  MultiDegree twist;
  Stabilization stabilization;
};

class StabilizationNotReached : public std::runtime_error {
 public:
  StabilizationNotReached(int index, MultiDegree twist, Stabilization s, std::vector<std::uint64_t> values);
  int index() const { return index_; }
  const MultiDegree& twist() const { return twist_; }
  const std::vector<std::uint64_t>& values() const { return values_; }

 private:
  int index_;
  MultiDegree twist_;
  std::vector<std::uint64_t> values_;
};

/// Resolution of S/B^[t] together with the fine (Z^n) degree of every generator.
struct BracketResolution {
  int t = 0;
  FreeResolution res;
  std::vector<std::vector<std::vector<int>>> fine;  // fine[j][g][v]
  /// (row, column, coefficient) of each d_{j+1}; every entry is a single term.
  std::vector<std::vector<std::tuple<std::uint32_t, std::uint32_t, Scalar>>> entries;
};

/// Computes local and sheaf cohomology through Ext(S/B^[t], M). Caches are
/// shared across threads.
class CohomologyEngine {
 public:
  explicit CohomologyEngine(Stabilization s = {});

  const Stabilization& stabilization() const { return stab_; }
  std::shared_ptr<const BracketResolution> bracket_resolution(const Ring& ring, int t);
  /// Saturation against the irrelevant ideal, memoized.
  Ideal saturation(const Ideal& i);

  /// dim Ext^i(S/B^[t], M)_u.
  std::uint64_t ext_dim(const Module& m, int i, const MultiDegree& u, int t);
  std::uint64_t local_cohomology_dim(const LocalCohomologyRequest& req);
  std::uint64_t local_cohomology_dim(const Module& m, int i, const MultiDegree& u);
  std::uint64_t sheaf_cohomology_dim(const Module& m, int i, const MultiDegree& u);
  /// All i in 0..dim X for each twist, cells spread over `threads` workers.
  CohomologyTable sheaf_cohomology_table(const Module& m, const std::vector<MultiDegree>& twists,
                                         unsigned threads = 1);

 private:
  std::uint64_t free_ext(const BracketResolution& b, const Ring& ring, int i, const MultiDegree& u);
  std::uint64_t ideal_ext(const BracketResolution& b, const Ideal& ideal, int i, const MultiDegree& u);
  std::uint64_t quotient_ext(const BracketResolution& b, const Ideal& ideal, int i, const MultiDegree& u);

  Stabilization stab_;
  std::mutex mutex_;
  std::map<std::tuple<std::string, std::string, int>, std::shared_ptr<const BracketResolution>> brackets_;
  std::map<std::string, Ideal> saturations_;
};

/// Smallest bracket power at which every class of the twist can appear:
/// max(1, max_k (D_k - u_k - n_k)) with D the componentwise largest generator degree.
int stabilization_floor(const Module& m, const MultiDegree& u);

/// sum_j (-1)^j sum_{a in F_j} chi(O(u - a)) over a minimal resolution of M.
BigInt euler_characteristic(const Module& m, const MultiDegree& u);

struct KoszulChop {
  /// Higher cohomology of every intermediate Koszul term vanishes, so the
  /// entries for i >= 1 are determined.
  bool valid = false;
  /// The intermediate terms also have no sections, so the i = 0 entry is determined.
  bool h0_valid = false;
  /// h^i(I_Y (x) O(twist)) for i = 0..dim X; unset where no claim is made.
  std::vector<std::optional<std::uint64_t>> dims;
  /// Intermediate twists whose cohomology blocks the chop.
  std::vector<MultiDegree> obstructions;
};

/// Cohomology of I_Y (x) O(twist) for Y cut out by forms of the given degrees,
/// all with components >= 1, and twist = K + sum d + N, from the Koszul complex.
KoszulChop koszul_chop(const ProductSpace& x, const std::vector<MultiDegree>& degrees, const MultiDegree& twist);

}  // namespace coxreg
