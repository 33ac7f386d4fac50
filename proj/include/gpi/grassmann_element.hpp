#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "gpi/algebra.hpp"
#include "gpi/polynomial.hpp"
#include "gpi/rational.hpp"

namespace gpi {

// Element of E_N keyed by generator bitmask (bit i-1 <-> e_i). Used for
// randomized evaluation where tabulating E_N would be wasteful.
class GrassmannElement {
 public:
  using Terms = std::map<std::uint32_t, Rational>;

  GrassmannElement() = default;
  static GrassmannElement one() {
    GrassmannElement e;
    e.terms_[0] = 1;
    return e;
  }
  static GrassmannElement monomial(std::uint32_t mask, const Rational& c = 1) {
    GrassmannElement e;
    if (c != 0) e.terms_[mask] = c;
    return e;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  GrassmannElement& operator+=(const GrassmannElement& o);
  GrassmannElement& operator*=(const Rational& c);
  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);
  bool operator==(const GrassmannElement&) const = default;

  std::string str() const;

 private:
  Terms terms_;
};

// Sign of e_S * e_T for disjoint sorted monomials S, T.
int grassmann_sign(std::uint32_t s, std::uint32_t t);

// Z2 degree of a monomial under `spec`'s generator degrees.
int grassmann_degree(std::uint32_t mask, const GrassmannSpec& spec);

// Random homogeneous element of degree `degree` with a few monomials of
// support size <= 3 and small nonzero integer coefficients. Never zero when
// the component is nonzero.
GrassmannElement random_homogeneous(const GrassmannSpec& spec, int degree, std::mt19937_64& rng);

// Evaluates f with x_id -> values[id]; degrees are not checked here.
GrassmannElement evaluate_in_grassmann(const NcPolynomial& f,
                                       const std::map<VarId, GrassmannElement>& values);

}  // namespace gpi
