#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "gpi/group.hpp"
#include "gpi/rational.hpp"

namespace gpi {

using VarId = std::uint64_t;

struct GradedVariable {
  VarId id = 0;
  GroupElement degree;
};

// A word in the free monoid on variable ids; the empty word is the unit.
using Word = std::vector<VarId>;

// Length first, then lexicographic on ids.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

// Maps each variable id to its G-degree.
using Universe = std::map<VarId, GroupElement>;

// Merges `b` into `a`; an id declared with two different degrees throws
// DegreeConflict.
void merge_universe(Universe& a, const Universe& b);

GroupElement word_degree(const Word& w, const Universe& universe,
                         const GroupSpec& spec);

// Element of the free G-graded algebra F<X> with rational coefficients.
// Terms never carry zero coefficients.
class NcPolynomial {
 public:
  using Terms = std::map<Word, Rational, WordOrder>;

  NcPolynomial() = default;

  static NcPolynomial constant(const Rational& c);
  static NcPolynomial variable(VarId id, const GroupElement& degree);
  static NcPolynomial monomial(const Word& w, const Rational& c,
                               const Universe& universe);

  const Terms& terms() const { return terms_; }
  const Universe& universe() const { return universe_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Coefficient of `w`, zero when absent.
  Rational coefficient(const Word& w) const;

  void add_term(const Word& w, const Rational& c);
  void declare(VarId id, const GroupElement& degree);

  NcPolynomial& operator+=(const NcPolynomial& other);
  NcPolynomial& operator-=(const NcPolynomial& other);
  NcPolynomial& operator*=(const Rational& c);

  friend NcPolynomial operator+(NcPolynomial a, const NcPolynomial& b) {
    return a += b;
  }
  friend NcPolynomial operator-(NcPolynomial a, const NcPolynomial& b) {
    return a -= b;
  }
  friend NcPolynomial operator-(NcPolynomial a) { return a *= Rational(-1); }
  friend NcPolynomial operator*(NcPolynomial a, const Rational& c) {
    return a *= c;
  }
  friend NcPolynomial operator*(const Rational& c, NcPolynomial a) {
    return a *= c;
  }
  friend NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b);

  bool operator==(const NcPolynomial& other) const {
    return terms_ == other.terms_;
  }

  // Largest word length, -1 for the zero polynomial.
  int max_length() const;

  // True when every term has the same G-degree.
  bool is_homogeneous(const GroupSpec& spec) const;
  // Degree of a homogeneous nonzero polynomial; throws otherwise.
  GroupElement degree(const GroupSpec& spec) const;

  // Ids of the variables that actually occur in some term.
  std::vector<VarId> occurring_variables() const;

 private:
  Terms terms_;
  Universe universe_;
};

NcPolynomial poly_mul(const NcPolynomial& f, const NcPolynomial& g);

// [f, g] = fg - gf, and the left-normed [f1, ..., fk].
NcPolynomial commutator(const NcPolynomial& f, const NcPolynomial& g);
NcPolynomial commutator(std::span<const NcPolynomial> args);

// Graded endomorphism: each mapped variable is replaced by its image, which
// must be homogeneous of the variable's degree (zero images are accepted).
// Variables absent from the map are left unchanged.
NcPolynomial substitute(const NcPolynomial& f,
                        const std::map<VarId, NcPolynomial>& images,
                        const GroupSpec& spec);

// Degrees of x_1..x_n for a multilinear component.
struct MultidegreeSignature {
  std::vector<GroupElement> degrees;

  std::size_t size() const { return degrees.size(); }
  Universe universe() const;  // x_i has id i (1-based)
  bool operator==(const MultidegreeSignature&) const = default;
  auto operator<=>(const MultidegreeSignature&) const = default;
};

// The n! words x_{s(1)}...x_{s(n)}, s running over permutations in
// lexicographic order. This is the column order of every identity space.
std::vector<Word> multilinear_monomials(const MultidegreeSignature& sig);
std::vector<Word> multilinear_monomials(std::size_t n);

// Position of a permutation word of 1..n in multilinear_monomials order.
std::size_t permutation_rank(std::span<const VarId> word);

std::size_t factorial(std::size_t n);

// Coordinates of a multilinear polynomial in the monomial basis of `sig`.
// Throws SignatureMismatch when `f` is not multilinear in x_1..x_n with the
// signature's degrees.
std::vector<Rational> multilinear_coordinates(const NcPolynomial& f,
                                              const MultidegreeSignature& sig);

// Inverse of multilinear_coordinates.
NcPolynomial from_multilinear_coordinates(std::span<const Rational> coords,
                                          const MultidegreeSignature& sig);

// Every signature of total degree n over `spec`, in lexicographic order of
// group-element indices.
std::vector<MultidegreeSignature> all_signatures(const GroupSpec& spec,
                                                 std::size_t n);

}  // namespace gpi
