#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "coxreg/arith.hpp"

namespace coxreg {

/// Sparse vector: strictly increasing column indices, nonzero values.
using SparseRow = std::vector<std::pair<std::uint32_t, Scalar>>;

/// Incremental semi-echelon form over an exact field. Rows are inserted one
/// at a time; each insert reports whether the row enlarged the span.
class RowEchelon {
 public:
  RowEchelon(const Field& field, std::size_t columns);
  ~RowEchelon();
  RowEchelon(RowEchelon&&) noexcept;
  RowEchelon& operator=(RowEchelon&&) noexcept;

  bool insert(const SparseRow& row);
  std::size_t rank() const;
  std::size_t columns() const;

  /// Fully reduced row echelon basis of the span, sorted by pivot column.
  std::vector<SparseRow> reduced_basis() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::size_t rank(const Field& field, std::size_t columns, const std::vector<SparseRow>& rows);

/// Basis of { c : sum_j c_j rows[j] = 0 }; each result is indexed by row number.
std::vector<SparseRow> left_kernel(const Field& field, std::size_t columns, const std::vector<SparseRow>& rows);

/// Coordinates of `v` in a reduced basis (as returned by reduced_basis), or
/// nothing when v is not in the span.
bool coordinates_in_reduced_basis(const Field& field, const std::vector<SparseRow>& basis, const SparseRow& v,
                                  SparseRow& coords);

}  // namespace coxreg
