#pragma once

#include <string>
#include <vector>

#include "gpi/group.hpp"
#include "gpi/poly_text.hpp"
#include "gpi/polynomial.hpp"

namespace testing_support {

inline gpi::MultidegreeSignature z2sig(const std::vector<int>& d) {
  gpi::MultidegreeSignature s;
  for (int x : d) s.degrees.push_back(gpi::GroupElement{{x}});
  return s;
}

inline gpi::MultidegreeSignature plain_sig(std::size_t n) {
  gpi::MultidegreeSignature s;
  s.degrees.assign(n, gpi::GroupElement{});
  return s;
}

inline gpi::NcPolynomial z2poly(const std::string& text) {
  return gpi::parse_polynomial(text, gpi::GroupSpec::z2());
}

inline gpi::NcPolynomial plain_poly(const std::string& text) {
  return gpi::parse_polynomial(text, gpi::GroupSpec::trivial());
}

}  // namespace testing_support
