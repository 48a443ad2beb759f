#include <random>

#include "coxreg/linalg.hpp"
#include "doctest.h"

using namespace coxreg;

namespace {

SparseRow dense_to_sparse(const Field& k, const std::vector<int>& v) {
  SparseRow r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) r.emplace_back(static_cast<std::uint32_t>(i), k.from_int(v[i]));
  return r;
}

// Independent oracle: dense Gaussian elimination over Q on integer matrices.
std::size_t dense_rank_q(std::vector<std::vector<Rational>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("rank of small matrices") {
  for (Field k : {Field::prime(), Field::rationals()}) {
    std::vector<SparseRow> rows = {dense_to_sparse(k, {1, 2, 3}), dense_to_sparse(k, {2, 4, 6}),
                                   dense_to_sparse(k, {0, 1, 1})};
    CHECK(rank(k, 3, rows) == 2);
    CHECK(rank(k, 3, {}) == 0);
    CHECK(rank(k, 0, rows) == 0);
  }
}

TEST_CASE("rank matches a dense oracle on random integer matrices") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> entry(-3, 3), dims(1, 9), sparsity(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    int r = dims(rng), c = dims(rng);
    std::vector<std::vector<int>> m(static_cast<std::size_t>(r), std::vector<int>(static_cast<std::size_t>(c)));
    for (auto& row : m)
      for (auto& x : row) x = sparsity(rng) ? 0 : entry(rng);
    // force some dependencies
    if (r > 2)
      for (int j = 0; j < c; ++j) m[2][static_cast<std::size_t>(j)] = m[0][static_cast<std::size_t>(j)] - m[1][static_cast<std::size_t>(j)];
    std::vector<std::vector<Rational>> mq;
    for (auto& row : m) mq.emplace_back(row.begin(), row.end());
    std::size_t expect = dense_rank_q(mq);
    for (Field k : {Field::prime(), Field::rationals()}) {
      std::vector<SparseRow> rows;
      for (auto& row : m) rows.push_back(dense_to_sparse(k, row));
      CHECK(rank(k, static_cast<std::size_t>(c), rows) == expect);
    }
  }
}

TEST_CASE("left kernel") {
  Field k = Field::rationals();
  std::vector<SparseRow> rows = {dense_to_sparse(k, {1, 1}), dense_to_sparse(k, {2, 2}), dense_to_sparse(k, {0, 1})};
  auto ker = left_kernel(k, 2, rows);
  REQUIRE(ker.size() == 1);
  // -2 * row0 + row1 = 0 up to scaling
  Rational a, b, c;
  for (auto& [i, v] : ker[0]) (i == 0 ? a : i == 1 ? b : c) = v.rational();
  CHECK(c == 0);
  CHECK(a == -2 * b);
}

TEST_CASE("reduced basis coordinates") {
  Field k = Field::prime();
  RowEchelon ech(k, 4);
  CHECK(ech.insert(dense_to_sparse(k, {1, 1, 0, 0})));
  CHECK(ech.insert(dense_to_sparse(k, {0, 1, 1, 0})));
  CHECK_FALSE(ech.insert(dense_to_sparse(k, {1, 2, 1, 0})));
  auto basis = ech.reduced_basis();
  REQUIRE(basis.size() == 2);
  SparseRow coords;
  CHECK(coordinates_in_reduced_basis(k, basis, dense_to_sparse(k, {2, 3, 1, 0}), coords));
  CHECK_FALSE(coordinates_in_reduced_basis(k, basis, dense_to_sparse(k, {0, 0, 0, 1}), coords));
}
