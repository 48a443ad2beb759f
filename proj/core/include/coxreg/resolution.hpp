#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "coxreg/groebner.hpp"

namespace coxreg {

using ModuleKind = SliceKind;

/// The free module (+) S(-a_j); `degrees` holds the a_j.
struct FreeModule {
  std::vector<MultiDegree> degrees;
  std::size_t rank() const { return degrees.size(); }
};

/// F_0 <- F_1 <- ... <- F_s. differentials[i] is d_{i+1}: F_{i+1} -> F_i
/// stored by columns; the term components of column j index the basis of F_i.
struct FreeResolution {
  RingPtr ring;
  std::vector<FreeModule> modules;
  std::vector<std::vector<Polynomial>> differentials;

  std::size_t length() const { return modules.empty() ? 0 : modules.size() - 1; }
  std::vector<std::size_t> ranks() const;
  /// Entry (row, col) of d_{i+1}.
  Polynomial entry(std::size_t i, std::uint32_t row, std::uint32_t col) const;
  /// Graded Betti numbers of F_i keyed by generator degree.
  std::map<MultiDegree, std::size_t> betti(std::size_t i) const;
};

struct ResolveOptions {
  int max_length = -1;  // -1: number of variables, or run to the end when not minimal
  /// Extract minimal generators of each syzygy module; when false the full
  /// Groebner basis of each syzygy module is used (Schreyer's raw form).
  bool minimal = true;
};

FreeResolution resolve(const Ideal& i, ModuleKind kind, ResolveOptions opts = {});

/// Columns generating the syzygies of `columns` (vectors in a free module of
/// the given rank), with their degrees.
struct Syzygies {
  std::vector<Polynomial> columns;
  std::vector<MultiDegree> degrees;
};
Syzygies syzygies(const Ring& ring, const FreeModule& target, const std::vector<Polynomial>& columns,
                  const std::vector<MultiDegree>& column_degrees, bool minimal);

/// Cancels unit entries until none remain.
FreeResolution minimize(const FreeResolution& r);
bool is_minimal(const FreeResolution& r);
bool composes_to_zero(const FreeResolution& r);
/// Every nonzero entry has degree (column degree - row degree).
bool entries_homogeneous(const FreeResolution& r);

/// Koszul complex on explicit forms: F_k = (+) over k-subsets of S(-sum of degrees).
FreeResolution koszul_resolution(RingPtr ring, const std::vector<Polynomial>& forms);
/// Ranks C(e,k) and generator degrees of the Koszul complex, without forms.
std::vector<FreeModule> koszul_shape(const std::vector<MultiDegree>& degrees);
/// Random forms of the given degrees with small coefficients, redrawn until
/// the quotient has complete-intersection Hilbert values on probe degrees.
std::vector<Polynomial> generic_forms(RingPtr ring, const std::vector<MultiDegree>& degrees, std::uint32_t seed,
                                      int attempts = 25);
bool has_complete_intersection_hilbert_values(const Ideal& i, const std::vector<MultiDegree>& degrees);

/// Hom(F, M)_u as matrices over the base field; C^j = (+)_{g in F_j} M_{u + a_g}.
/// Only the terms first..last are built; dims[k] and maps[k] refer to C^{first+k}.
struct HomSliceComplex {
  MultiDegree twist;
  std::size_t first = 0;
  std::vector<std::size_t> dims;
  /// offsets[k][g]: first coordinate of generator g's summand in C^{first+k}.
  std::vector<std::vector<std::uint32_t>> offsets;
  /// maps[k]: C^{first+k} -> C^{first+k+1}, one row per basis element of the source.
  std::vector<std::vector<SparseRow>> maps;
};

HomSliceComplex hom_slice_complex(const FreeResolution& r, const Ideal& m, ModuleKind kind, const MultiDegree& u,
                                  std::size_t first = 0, std::size_t last = SIZE_MAX);
/// Cohomology of the terms built, treating the window edges as ends of the complex.
std::vector<std::size_t> complex_cohomology_dims(const Field& k, const HomSliceComplex& c);
/// Rows of a composite C^j -> C^{j+2}; all zero for a complex.
bool hom_complex_is_complex(const Field& k, const HomSliceComplex& c);

}  // namespace coxreg
