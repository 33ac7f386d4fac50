#pragma once

#include <gmpxx.h>

#include <string>

namespace gpi {

using Rational = mpq_class;
using Integer = mpz_class;

// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q". Throws ParseError.
Rational parse_rational(const std::string& text);

}  // namespace gpi
