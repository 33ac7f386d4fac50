#include <random>

#include "doctest.h"
#include "gpi/errors.hpp"
#include "gpi/linalg.hpp"

using namespace gpi;

namespace {

SparseMatrix dense(std::vector<std::vector<int>> rows, std::size_t cols) {
  std::vector<std::vector<Rational>> r;
  for (auto& row : rows) r.emplace_back(row.begin(), row.end());
  return SparseMatrix::from_dense(r, cols);
}

Subspace span(std::vector<std::vector<int>> rows, std::size_t cols) {
  return rref(dense(std::move(rows), cols));
}

bool kernel_ok(const SparseMatrix& m, const Subspace& k) {
  for (const auto& v : k.basis()) {
    const auto d = make_dense(v, m.n_cols());
    for (const auto& x : m.apply(d))
      if (x != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("rref examples") {
  const auto s = span({{2, 4}, {1, 2}}, 2);
  REQUIRE(s.dim() == 1);
  CHECK(make_dense(s.basis()[0], 2) == std::vector<Rational>{1, 2});
  const auto id = span({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3);
  CHECK(id == Subspace::full(3));
  CHECK(span({{0, 0}, {0, 0}}, 2).dim() == 0);
}

TEST_CASE("kernel examples") {
  const auto k = kernel_basis(dense({{1, 1}, {2, 2}}, 2));
  REQUIRE(k.dim() == 1);
  CHECK(k.contains(std::vector<Rational>{1, -1}));
  CHECK(kernel_basis(dense({{1, 2}, {3, 4}}, 2)).dim() == 0);
  CHECK(kernel_basis(SparseMatrix(0, 3)).dim() == 3);
}

TEST_CASE("subspace sum, intersection and comparison") {
  const auto a = span({{1, 0}}, 2), b = span({{0, 1}}, 2), zero = Subspace(2);
  CHECK(subspace_sum(a, b) == Subspace::full(2));
  CHECK(subspace_sum(a, a) == a);
  CHECK(subspace_sum(a, zero) == a);
  CHECK(subspace_intersection(a, b).dim() == 0);
  CHECK(subspace_intersection(a, Subspace::full(2)) == a);
  CHECK(subspace_cmp(a, a) == SubspaceRelation::equal);
  CHECK(subspace_cmp(a, Subspace::full(2)) == SubspaceRelation::a_strictly_inside_b);
  CHECK(subspace_cmp(Subspace::full(2), a) == SubspaceRelation::b_strictly_inside_a);
  CHECK(subspace_cmp(a, b) == SubspaceRelation::incomparable);
  CHECK_THROWS_AS(subspace_cmp(a, Subspace(3)), AmbientMismatch);
}

TEST_CASE("coordinates") {
  const auto s = span({{1, 1, 0}, {0, 1, 1}}, 3);
  const auto c = s.coordinates(make_sparse(std::vector<Rational>{1, 2, 1}));
  REQUIRE(c.has_value());
  CHECK(!s.coordinates(make_sparse(std::vector<Rational>{1, 0, 0})).has_value());
}

TEST_CASE("triplet format round trips") {
  const auto m = dense({{0, 3, 0}, {-1, 0, 0}}, 3);
  const std::string text = to_triplets(m);
  CHECK(text.rfind("2 3 2\n", 0) == 0);
  const auto back = from_triplets(text);
  CHECK(to_triplets(back) == text);
  CHECK(back.at(1, 0) == -1);
}

TEST_CASE("rank-nullity and kernels, exhaustive over 2x3 matrices with entries in {-1,0,1}") {
  std::vector<int> e(6, -1);
  std::size_t count = 0;
  while (true) {
    const auto m = dense({{e[0], e[1], e[2]}, {e[3], e[4], e[5]}}, 3);
    const auto r = rref(m);
    const auto k = kernel_basis(m);
    CHECK(r.dim() + k.dim() == 3);
    CHECK(kernel_ok(m, k));
    ++count;
    std::size_t i = 0;
    while (i < 6 && ++e[i] > 1) e[i++] = -1;
    if (i == 6) break;
  }
  CHECK(count == 729);
}

TEST_CASE("rref is canonical and idempotent on sampled row spaces") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 5;
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols));
    for (auto& row : a)
      for (auto& x : row) x = Rational(small(rng), 1 + rng() % 3);
    // b = T a with T random; equal row spaces when T is invertible
    std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(rows));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < rows; ++j) t[i][j] = i == j ? 1 : (j > i ? small(rng) : 0);
    std::vector<std::vector<Rational>> b(rows, std::vector<Rational>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t l = 0; l < rows; ++l) b[i][j] += t[i][l] * a[l][j];
    const auto ma = SparseMatrix::from_dense(a, cols), mb = SparseMatrix::from_dense(b, cols);
    const auto ra = rref(ma);
    CHECK(ra == rref(mb));
    SparseMatrix again(cols);
    for (const auto& r : ra.basis()) again.append_row(r);
    CHECK(rref(again) == ra);
    const auto k = kernel_basis(ma);
    CHECK(ra.dim() + k.dim() == cols);
    CHECK(kernel_ok(ma, k));
    CHECK(kernel_of(ra) == k);
    // pivots are 1 and the pivot columns are otherwise zero
    for (std::size_t i = 0; i < ra.dim(); ++i) {
      const auto d = make_dense(ra.basis()[i], cols);
      CHECK(d[ra.pivots()[i]] == 1);
      for (std::size_t j = 0; j < ra.dim(); ++j)
        if (j != i) CHECK(make_dense(ra.basis()[j], cols)[ra.pivots()[i]] == 0);
    }
  }
}

TEST_CASE("incremental builder agrees with batch rref") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t cols = 6;
    RowSpaceBuilder builder(cols);
    SparseMatrix m(cols);
    for (int r = 0; r < 8; ++r) {
      std::vector<Rational> row(cols);
      for (auto& x : row) x = static_cast<int>(rng() % 5) - 2;
      const std::size_t before = builder.rank();
      const bool grew = builder.add_dense(row);
      CHECK(grew == (builder.rank() == before + 1));
      m.append_row(make_sparse(row));
    }
    CHECK(builder.finish() == rref(m));
  }
}

TEST_CASE("resource guard") {
  ResourceGuard g;
  g.max_cells = 10;
  std::vector<SparseRow> rows(5, SparseRow{{0, Rational(1)}});
  CHECK_THROWS_AS(span_of(rows, 4, g), GuardExceeded);
  ResourceGuard bits;
  bits.max_bits = 8;
  RowSpaceBuilder b(2, bits);
  CHECK_THROWS_AS(b.add(SparseRow{{0, Rational(1)}, {1, Rational(Integer(1) << 40, 3)}}), GuardExceeded);
}
