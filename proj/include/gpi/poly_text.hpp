#pragma once

#include <string>
#include <string_view>

#include "gpi/group.hpp"
#include "gpi/polynomial.hpp"

namespace gpi {

// Text format for polynomials:
//
//   3/2*x1^(1)*x2^(0) - x2^(0)*x1^(1)
//
// Factors are `x<id>^(g)` with g a comma-separated residue tuple, `x<id>`
// (degree = group identity), `y<id>` / `z<id>` (Z2 degree 0 / 1), a
// parenthesised sub-expression, or a left-normed commutator `[a,b,...]` of
// factors. Whitespace is ignored.
NcPolynomial parse_polynomial(std::string_view text, const GroupSpec& spec);

// Canonical printer: terms in word order, coefficient omitted when 1,
// variables always as `x<id>^(g)`. Parses back to the same polynomial.
std::string print_polynomial(const NcPolynomial& f);

// Residue tuple "1,2" or "(1,2)" or a bare "1" for single-factor groups.
GroupElement parse_group_element(std::string_view text, const GroupSpec& spec);

}  // namespace gpi
