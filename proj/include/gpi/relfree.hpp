#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpi/polynomial.hpp"
#include "gpi/rational.hpp"

namespace gpi {

// Z2-gradings of the Grassmann algebra with a closed-form relatively free
// basis. The trivial group is handled as infty with all variables even.
struct GradingMode {
  enum class Kind { natural, infty, k_star };
  Kind kind = Kind::infty;
  int k = 0;

  static GradingMode natural() { return {Kind::natural, 0}; }
  static GradingMode infty() { return {Kind::infty, 0}; }
  static GradingMode k_star(int k) { return {Kind::k_star, k}; }

  bool operator==(const GradingMode&) const = default;
};

std::string to_string(const GradingMode& m);
// "natural", "infty", "kstar:<k>". "k:<k>" raises Unsupported.
GradingMode parse_grading_mode(const std::string& text);

// A letter of the relatively free algebra: a variable id with its parity.
struct Letter {
  VarId id = 0;
  bool odd = false;

  // Even letters before odd ones, then by id.
  auto operator<=>(const Letter& o) const {
    if (odd != o.odd) return odd <=> o.odd;
    return id <=> o.id;
  }
  bool operator==(const Letter&) const = default;
};

// y_{i1}..y_{in} z_{j1}..z_{jm} [x_{l1},x_{l2}]..[x_{l(2s-1)},x_{l2s}]
struct RelFreeWord {
  std::vector<Letter> letters;      // sorted: evens then odds, nondecreasing
  std::vector<Letter> commutators;  // slots, strictly increasing by id

  std::vector<VarId> evens() const;
  std::vector<VarId> odds() const;
  std::size_t odd_count() const;  // odd letters plus odd commutator slots
  std::size_t degree() const { return letters.size() + commutators.size(); }

  auto operator<=>(const RelFreeWord&) const = default;
  bool operator==(const RelFreeWord&) const = default;
};

// Checks the basis-word invariants for `mode`.
bool is_basis_word(const RelFreeWord& w, const GradingMode& mode);

// Fault switches used to validate the soundness probe itself.
struct RewriteFaults {
  // Sort commutator slots without the alternating sign.
  bool drop_slot_sign = false;
};

class RelFreeElement {
 public:
  using Terms = std::map<RelFreeWord, Rational>;

  RelFreeElement() = default;
  explicit RelFreeElement(GradingMode mode) : mode_(mode) {}

  static RelFreeElement constant(GradingMode mode, const Rational& c);
  static RelFreeElement letter(GradingMode mode, Letter l);

  const GradingMode& mode() const { return mode_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const RelFreeWord& w, const Rational& c);

  RelFreeElement& operator+=(const RelFreeElement& o);
  RelFreeElement& operator-=(const RelFreeElement& o);
  RelFreeElement& operator*=(const Rational& c);
  friend RelFreeElement operator+(RelFreeElement a, const RelFreeElement& b) { return a += b; }
  friend RelFreeElement operator-(RelFreeElement a, const RelFreeElement& b) { return a -= b; }
  friend RelFreeElement operator*(RelFreeElement a, const Rational& c) { return a *= c; }

  bool operator==(const RelFreeElement& o) const {
    return mode_ == o.mode_ && terms_ == o.terms_;
  }

 private:
  GradingMode mode_;
  Terms terms_;
};

// Class of f modulo the mode's T-ideal, in basis words. Variables must carry
// Z2 degrees (or trivial-group degrees, read as even).
RelFreeElement normal_form(const NcPolynomial& f, const GradingMode& mode,
                           const RewriteFaults& faults = {});

RelFreeElement relfree_mul(const RelFreeElement& a, const RelFreeElement& b);

// Renames variables (parity preserved) and renormalizes.
RelFreeElement rename_variables(const RelFreeElement& a, const std::map<VarId, VarId>& renaming);

// The basis word (or element) as a polynomial of F<X>.
NcPolynomial expand(const RelFreeWord& w);
NcPolynomial expand(const RelFreeElement& a);

// y1*y1*z3*[y2,z5]; coefficients as in the polynomial format. "0" for zero.
std::string print_relfree(const RelFreeElement& a);
std::string print_word(const RelFreeWord& w);
// Reads printed normal forms (and any polynomial text) back into `mode`.
RelFreeElement parse_relfree(std::string_view text, const GradingMode& mode);

// Basis words that use each of x_1..x_n exactly once.
std::vector<RelFreeWord> multilinear_basis_words(const GradingMode& mode,
                                                 const MultidegreeSignature& sig);

struct SoundnessReport {
  std::size_t trials = 0;
  std::size_t discrepancies = 0;
  // First failing substitution, rendered as text.
  std::optional<std::string> witness;
};

// Evaluates f - expand(normal_form(f)) on `trials` pseudo-random graded
// substitutions into E_N carrying the mode's grading.
SoundnessReport soundness_probe(const NcPolynomial& f, const GradingMode& mode, int n_generators,
                                std::size_t trials, std::uint64_t seed,
                                const RewriteFaults& faults = {});

struct MultiplicativityVerdict {
  bool holds = true;
  std::size_t samples_checked = 0;
  // Populated when holds == false.
  std::vector<RelFreeWord> left, right;
  std::string witness;
};

MultiplicativityVerdict partial_multiplicativity_check(const GradingMode& mode,
                                                       std::size_t degree_bound,
                                                       std::size_t sample_count,
                                                       std::uint64_t seed);

}  // namespace gpi
