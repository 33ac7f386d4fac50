#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gpi/rational.hpp"

namespace gpi {

// Sorted (column, nonzero value) pairs.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

SparseRow make_sparse(std::span<const Rational> dense);
std::vector<Rational> make_dense(const SparseRow& row, std::size_t n);

class SparseMatrix {
 public:
  SparseMatrix(std::size_t n_rows, std::size_t n_cols);
  explicit SparseMatrix(std::size_t n_cols) : SparseMatrix(0, n_cols) {}

  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows,
                                 std::size_t n_cols);

  std::size_t n_rows() const { return rows_.size(); }
  std::size_t n_cols() const { return n_cols_; }
  const SparseRow& row(std::size_t i) const { return rows_[i]; }
  const std::vector<SparseRow>& rows() const { return rows_; }

  // Column indices must be < n_cols; entries are sorted and zeros dropped.
  void append_row(SparseRow row);
  void set(std::size_t r, std::size_t c, const Rational& value);
  Rational at(std::size_t r, std::size_t c) const;
  std::size_t nnz() const;

  // m * v
  std::vector<Rational> apply(std::span<const Rational> v) const;

 private:
  std::size_t n_cols_;
  std::vector<SparseRow> rows_;
};

// Header `rows cols nnz`, then one `row col p/q` line per entry, 0-based,
// row-major.
std::string to_triplets(const SparseMatrix& m);
SparseMatrix from_triplets(const std::string& text);

struct ResourceGuard {
  std::size_t max_cells = 400'000'000;  // rows * cols
  std::size_t max_bits = 1 << 16;       // per intermediate coefficient
};

// Row space in canonical reduced row-echelon form.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<SparseRow>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const SparseRow& v) const;
  bool contains(std::span<const Rational> v) const;

  // Coefficients of `v` on the basis rows, or nullopt when v is outside.
  std::optional<std::vector<Rational>> coordinates(const SparseRow& v) const;

  static Subspace full(std::size_t ambient_dim);

  bool operator==(const Subspace& other) const = default;

 private:
  friend class RowSpaceBuilder;
  std::size_t ambient_dim_;
  std::vector<SparseRow> basis_;
  std::vector<std::size_t> pivots_;
};

// Incremental fraction-free echelon form. Rows are kept primitive over the
// integers with positive leading entry; finish() back-substitutes and
// normalizes pivots to 1.
class RowSpaceBuilder {
 public:
  explicit RowSpaceBuilder(std::size_t n_cols, ResourceGuard guard = {});

  // Returns true when the row enlarged the span.
  bool add(const SparseRow& row);
  bool add_dense(std::span<const Rational> row);
  std::size_t rank() const { return echelon_.size(); }
  std::size_t n_cols() const { return n_cols_; }
  bool is_full() const { return echelon_.size() == n_cols_; }

  Subspace finish() const;

 private:
  using IntRow = std::vector<std::pair<std::size_t, Integer>>;
  void check_bits(const IntRow& row) const;

  std::size_t n_cols_;
  ResourceGuard guard_;
  std::map<std::size_t, IntRow> echelon_;  // keyed by leading column
};

Subspace rref(const SparseMatrix& m, const ResourceGuard& guard = {});
Subspace kernel_basis(const SparseMatrix& m, const ResourceGuard& guard = {});
// Kernel of the matrix whose rows span `rows`.
Subspace kernel_of(const Subspace& rows);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersection(const Subspace& a, const Subspace& b);
Subspace span_of(const std::vector<SparseRow>& rows, std::size_t ambient_dim,
                 const ResourceGuard& guard = {});

enum class SubspaceRelation { equal, a_strictly_inside_b, b_strictly_inside_a, incomparable };

SubspaceRelation subspace_cmp(const Subspace& a, const Subspace& b);
std::string to_string(SubspaceRelation r);

}  // namespace gpi
