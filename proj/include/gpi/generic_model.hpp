#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gpi/algebra.hpp"
#include "gpi/group.hpp"
#include "gpi/polynomial.hpp"
#include "gpi/relfree.hpp"

namespace gpi {

// U(d_1..d_m; E) over the relatively free backend of a Grassmann grading.
struct ModelConfig {
  BlockShape shape;
  GroupSpec group = GroupSpec::z2();
  GradingMode backend = GradingMode::infty();

  void validate() const;
  bool operator==(const ModelConfig&) const = default;
};

// The entry variable x_{ij,k}^{(g)}; row and col are 1-based.
struct EntryVariable {
  int row = 1;
  int col = 1;
  int k = 1;
  std::size_t group_index = 0;  // index into GroupSpec::elements()

  bool operator==(const EntryVariable&) const = default;
};

// id = 1 + (((k-1)|G| + g) n + (row-1)) n + (col-1), n the matrix size.
VarId encode_entry_variable(const EntryVariable& v, const ModelConfig& cfg);
EntryVariable decode_entry_variable(VarId id, const ModelConfig& cfg);

class GenericMatrix {
 public:
  GenericMatrix(BlockShape shape, GradingMode mode);

  const BlockShape& shape() const { return shape_; }
  const GradingMode& mode() const { return mode_; }
  int size() const { return n_; }

  // 0-based. Positions below the diagonal blocks are structural zeros.
  const RelFreeElement& at(int r, int c) const { return entries_[r * n_ + c]; }
  void set(int r, int c, RelFreeElement value);

  bool is_zero() const;

  GenericMatrix& operator+=(const GenericMatrix& o);
  GenericMatrix& operator-=(const GenericMatrix& o);
  GenericMatrix& operator*=(const Rational& c);
  friend GenericMatrix operator+(GenericMatrix a, const GenericMatrix& b) { return a += b; }
  friend GenericMatrix operator-(GenericMatrix a, const GenericMatrix& b) { return a -= b; }
  friend GenericMatrix operator*(GenericMatrix a, const Rational& c) { return a *= c; }
  friend GenericMatrix operator*(const GenericMatrix& a, const GenericMatrix& b);
  bool operator==(const GenericMatrix& o) const = default;

  static GenericMatrix identity(BlockShape shape, GradingMode mode);

 private:
  void check_compatible(const GenericMatrix& o) const;

  BlockShape shape_;
  GradingMode mode_;
  int n_;
  std::vector<RelFreeElement> entries_;
};

GenericMatrix make_generator(int k, const GroupElement& g, const ModelConfig& cfg);

// f(xi): variable x_k of degree g goes to xi_k^{(g)}.
GenericMatrix model_eval(const NcPolynomial& f, const ModelConfig& cfg);

// x_{ij,k} -> x_{i+1,j+1,k} (indices mod n) on every entry. Single block only.
GenericMatrix shift_automorphism(const GenericMatrix& m, const ModelConfig& cfg);

// k is 1-based.
std::vector<RelFreeElement> column_projection(const GenericMatrix& m, int k);

// Linear independence over Q of the k-th columns.
bool independent_by_columns(std::span<const GenericMatrix> set, int k);
// Linear independence over Q of the full matrices.
bool independent_full(std::span<const GenericMatrix> set);

struct BlockViews {
  GenericMatrix leading;  // shape (d_1..d_{m-1})
  GenericMatrix corner;   // shape (d_m)
  // d x d_m, d = d_1 + ... + d_{m-1}, row-major.
  std::vector<RelFreeElement> strip;
  int strip_rows = 0;
  int strip_cols = 0;
};

BlockViews extract_blocks(const GenericMatrix& m, const ModelConfig& cfg);
GenericMatrix reassemble(const BlockViews& views, const ModelConfig& cfg);

// One row per line, entries separated by " | ".
std::string print_matrix(const GenericMatrix& m);

}  // namespace gpi
