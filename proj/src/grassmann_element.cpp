#include "gpi/grassmann_element.hpp"

#include <bit>
#include <vector>

#include "gpi/errors.hpp"

namespace gpi {

int grassmann_sign(std::uint32_t s, std::uint32_t t) {
  int inversions = 0;
  while (t) {
    const int q = std::countr_zero(t);
    inversions += std::popcount(s >> (q + 1));
    t &= t - 1;
  }
  return inversions % 2 ? -1 : 1;
}

int grassmann_degree(std::uint32_t mask, const GrassmannSpec& spec) {
  int d = 0;
  while (mask) {
    const int q = std::countr_zero(mask);
    d ^= spec.generator_degree(q + 1);
    mask &= mask - 1;
  }
  return d;
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
  for (const auto& [m, c] : o.terms_) {
    Rational& slot = terms_[m];
    slot += c;
    if (slot == 0) terms_.erase(m);
  }
  return *this;
}

GrassmannElement& GrassmannElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
  GrassmannElement out;
  for (const auto& [s, x] : a.terms_) {
    for (const auto& [t, y] : b.terms_) {
      if (s & t) continue;
      Rational& slot = out.terms_[s | t];
      if (grassmann_sign(s, t) > 0) {
        slot += x * y;
      } else {
        slot -= x * y;
      }
      if (slot == 0) out.terms_.erase(s | t);
    }
  }
  return out;
}

std::string GrassmannElement::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += to_string(c);
    if (m == 0) continue;
    out += "*";
    for (int i = 0; i < 32; ++i) {
      if (m >> i & 1u) out += "e" + std::to_string(i + 1);
    }
  }
  return out;
}

GrassmannElement random_homogeneous(const GrassmannSpec& spec, int degree, std::mt19937_64& rng) {
  const int n = spec.n_generators;
  // Monomials of support size <= 3 in the requested degree.
  std::vector<std::uint32_t> pool;
  for (std::uint32_t m = 0; m < (n >= 32 ? 0u : (1u << n)); ++m) {
    if (std::popcount(m) <= 3 && grassmann_degree(m, spec) == degree) pool.push_back(m);
  }
  if (pool.empty()) return {};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> how_many(1, 3);
  std::uniform_int_distribution<int> coeff(1, 3);
  std::uniform_int_distribution<int> sign(0, 1);
  GrassmannElement e;
  const int terms = how_many(rng);
  for (int t = 0; t < terms; ++t) {
    const int c = coeff(rng) * (sign(rng) ? -1 : 1);
    e += GrassmannElement::monomial(pool[pick(rng)], c);
  }
  if (e.is_zero()) e = GrassmannElement::monomial(pool[pick(rng)], 1);
  return e;
}

GrassmannElement evaluate_in_grassmann(const NcPolynomial& f,
                                       const std::map<VarId, GrassmannElement>& values) {
  GrassmannElement result;
  for (const auto& [w, c] : f.terms()) {
    GrassmannElement term = GrassmannElement::monomial(0, c);
    for (VarId id : w) {
      auto it = values.find(id);
      if (it == values.end()) throw GradedEvaluationError("no value for x" + std::to_string(id));
      term = term * it->second;
      if (term.is_zero()) break;
    }
    result += term;
  }
  return result;
}

}  // namespace gpi
