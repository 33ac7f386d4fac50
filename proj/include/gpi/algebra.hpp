#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpi/group.hpp"
#include "gpi/linalg.hpp"
#include "gpi/polynomial.hpp"

namespace gpi {

// Coordinates in the algebra's basis, sorted by basis index, no zeros.
using AlgebraElement = SparseRow;

// The map |.| : {1..n} -> G inducing an elementary grading.
struct GradingMap {
  std::vector<GroupElement> targets;
};

// Homogeneous Z2-gradings of the Grassmann algebra on N generators.
enum class GrassmannDegree { natural, infty, k_star, explicit_values };

struct GrassmannSpec {
  int n_generators = 0;
  GrassmannDegree deg_kind = GrassmannDegree::natural;
  int k = 0;                       // k_star only
  std::vector<int> explicit_degrees;  // explicit_values only, one per generator

  // Z2 degree (0 or 1) of generator e_i, 1-based.
  int generator_degree(int i) const;
  void validate() const;
  bool operator==(const GrassmannSpec&) const = default;
};

struct BlockShape {
  std::vector<int> sizes;

  int total() const;
  int block_of(int index) const;  // 0-based matrix index -> block
  // Position (r, s), 0-based, lies inside or above the diagonal blocks.
  bool allows(int r, int s) const;
  void validate() const;
  bool operator==(const BlockShape&) const = default;
};

// Finite-dimensional associative unital G-graded algebra given by
// homogeneous basis labels and a sparse multiplication table.
class StructureConstantAlgebra {
 public:
  StructureConstantAlgebra(GroupSpec group, std::vector<std::string> labels,
                           std::vector<GroupElement> degrees);

  const GroupSpec& group() const { return group_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const GroupElement& degree_of(std::size_t i) const { return degrees_[i]; }
  const AlgebraElement& unit() const { return unit_; }

  void set_product(std::size_t i, std::size_t j, AlgebraElement value);
  void set_unit(AlgebraElement unit) { unit_ = std::move(unit); }
  const AlgebraElement& product(std::size_t i, std::size_t j) const {
    return table_[i * dim() + j];
  }

  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  // Product with a single basis element on the right.
  AlgebraElement multiply_basis(const AlgebraElement& a, std::size_t j) const;

  // Throws MalformedElement on the first failing associativity, unit, or
  // grading law. Exhaustive for dim <= exhaustive_bound, otherwise on
  // `samples` deterministic triples.
  void validate(std::size_t exhaustive_bound = 64, std::size_t samples = 10'000) const;

  // Label of the algebra's construction, for certificates.
  std::string description;

 private:
  GroupSpec group_;
  std::vector<std::string> labels_;
  std::vector<GroupElement> degrees_;
  std::vector<AlgebraElement> table_;
  AlgebraElement unit_;
};

AlgebraElement basis_vector(std::size_t i);
AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement scale(const AlgebraElement& a, const Rational& c);

// M_n(F) with |e_ij| = |j| |i|^{-1}.
StructureConstantAlgebra build_matrix_algebra(int n, const GradingMap& g, const GroupSpec& spec);

// Block-triangular subalgebra of M_n(F) with the elementary grading of `g`.
StructureConstantAlgebra build_block_triangular_elementary(const BlockShape& shape,
                                                           const GradingMap& g,
                                                           const GroupSpec& spec);

// E_N: basis = subsets of {1..N} ordered by (size, lexicographic).
StructureConstantAlgebra build_grassmann(const GrassmannSpec& spec);

// UT(d_1..d_m; A) with entry-degree grading: |e_rs (x) b| = |b|.
StructureConstantAlgebra build_matrix_over(const StructureConstantAlgebra& a,
                                           const BlockShape& shape);

// Same multiplication table, regraded by the trivial group.
StructureConstantAlgebra with_trivial_grading(const StructureConstantAlgebra& a);

struct RegularityReport {
  bool regular = false;
  bool surjective = false;
  std::vector<std::size_t> fiber_sizes;  // indexed like GroupSpec::elements()
};

RegularityReport is_g_regular(const GradingMap& g, const GroupSpec& spec);

// Basis vectors of A^g.
std::vector<AlgebraElement> homogeneous_basis(const StructureConstantAlgebra& a,
                                              const GroupElement& g);
std::vector<GroupElement> support(const StructureConstantAlgebra& a);

// Image of f under x_id -> assignment[id]. Every assigned element must be
// homogeneous of the variable's degree (zero is accepted).
AlgebraElement evaluate(const NcPolynomial& f,
                        const std::map<VarId, AlgebraElement>& assignment,
                        const StructureConstantAlgebra& a);

}  // namespace gpi
