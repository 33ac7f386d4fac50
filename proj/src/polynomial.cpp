#include "gpi/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gpi/errors.hpp"

namespace gpi {

void merge_universe(Universe& a, const Universe& b) {
  for (const auto& [id, degree] : b) {
    auto [it, inserted] = a.emplace(id, degree);
    if (!inserted && it->second != degree) {
      throw DegreeConflict("variable x" + std::to_string(id) +
                           " declared with degrees " + to_string(it->second) +
                           " and " + to_string(degree));
    }
  }
}

GroupElement word_degree(const Word& w, const Universe& universe,
                         const GroupSpec& spec) {
  GroupElement d = spec.identity();
  for (VarId id : w) {
    auto it = universe.find(id);
    if (it == universe.end()) {
      throw UnknownVariable("unknown variable x" + std::to_string(id));
    }
    d = spec.op(d, it->second);
  }
  return d;
}

NcPolynomial NcPolynomial::constant(const Rational& c) {
  NcPolynomial p;
  p.add_term({}, c);
  return p;
}

NcPolynomial NcPolynomial::variable(VarId id, const GroupElement& degree) {
  NcPolynomial p;
  p.declare(id, degree);
  p.add_term({id}, Rational(1));
  return p;
}

NcPolynomial NcPolynomial::monomial(const Word& w, const Rational& c,
                                    const Universe& universe) {
  NcPolynomial p;
  for (VarId id : w) {
    auto it = universe.find(id);
    if (it == universe.end()) {
      throw UnknownVariable("unknown variable x" + std::to_string(id));
    }
    p.declare(id, it->second);
  }
  p.add_term(w, c);
  return p;
}

Rational NcPolynomial::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void NcPolynomial::add_term(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void NcPolynomial::declare(VarId id, const GroupElement& degree) {
  merge_universe(universe_, Universe{{id, degree}});
}

NcPolynomial& NcPolynomial::operator+=(const NcPolynomial& other) {
  merge_universe(universe_, other.universe_);
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NcPolynomial& NcPolynomial::operator-=(const NcPolynomial& other) {
  merge_universe(universe_, other.universe_);
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

NcPolynomial& NcPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b) {
  NcPolynomial r;
  r.universe_ = a.universe_;
  merge_universe(r.universe_, b.universe_);
  for (const auto& [u, cu] : a.terms_) {
    for (const auto& [v, cv] : b.terms_) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      r.add_term(w, cu * cv);
    }
  }
  return r;
}

int NcPolynomial::max_length() const {
  int best = -1;
  for (const auto& [w, c] : terms_) best = std::max(best, int(w.size()));
  return best;
}

bool NcPolynomial::is_homogeneous(const GroupSpec& spec) const {
  std::set<GroupElement> seen;
  for (const auto& [w, c] : terms_) seen.insert(word_degree(w, universe_, spec));
  return seen.size() <= 1;
}

GroupElement NcPolynomial::degree(const GroupSpec& spec) const {
  if (terms_.empty()) throw GradedSubstitutionError("zero has no degree");
  if (!is_homogeneous(spec)) {
    throw GradedSubstitutionError("polynomial is not homogeneous");
  }
  return word_degree(terms_.begin()->first, universe_, spec);
}

std::vector<VarId> NcPolynomial::occurring_variables() const {
  std::set<VarId> ids;
  for (const auto& [w, c] : terms_) ids.insert(w.begin(), w.end());
  return {ids.begin(), ids.end()};
}

NcPolynomial poly_mul(const NcPolynomial& f, const NcPolynomial& g) {
  return f * g;
}

NcPolynomial commutator(const NcPolynomial& f, const NcPolynomial& g) {
  return f * g - g * f;
}

NcPolynomial commutator(std::span<const NcPolynomial> args) {
  if (args.empty()) throw MalformedElement("empty commutator");
  NcPolynomial acc = args[0];
  for (std::size_t i = 1; i < args.size(); ++i) acc = commutator(acc, args[i]);
  return acc;
}

NcPolynomial substitute(const NcPolynomial& f,
                        const std::map<VarId, NcPolynomial>& images,
                        const GroupSpec& spec) {
  for (const auto& [id, image] : images) {
    auto it = f.universe().find(id);
    if (it == f.universe().end()) continue;
    if (image.is_zero()) continue;
    if (!image.is_homogeneous(spec) || image.degree(spec) != it->second) {
      throw GradedSubstitutionError(
          "image of x" + std::to_string(id) + " is not homogeneous of degree " +
          to_string(it->second));
    }
  }
  NcPolynomial result;
  for (const auto& [id, degree] : f.universe()) {
    if (!images.contains(id)) result.declare(id, degree);
  }
  for (const auto& [w, c] : f.terms()) {
    NcPolynomial term = NcPolynomial::constant(c);
    for (VarId id : w) {
      auto it = images.find(id);
      if (it != images.end()) {
        term = term * it->second;
      } else {
        term = term * NcPolynomial::variable(id, f.universe().at(id));
      }
      if (term.is_zero()) break;
    }
    result += term;
  }
  return result;
}

Universe MultidegreeSignature::universe() const {
  Universe u;
  for (std::size_t i = 0; i < degrees.size(); ++i) u.emplace(i + 1, degrees[i]);
  return u;
}

std::size_t factorial(std::size_t n) {
  std::size_t r = 1;
  for (std::size_t i = 2; i <= n; ++i) r *= i;
  return r;
}

std::vector<Word> multilinear_monomials(std::size_t n) {
  Word w(n);
  std::iota(w.begin(), w.end(), VarId{1});
  std::vector<Word> out;
  out.reserve(factorial(n));
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

std::vector<Word> multilinear_monomials(const MultidegreeSignature& sig) {
  return multilinear_monomials(sig.size());
}

std::size_t permutation_rank(std::span<const VarId> word) {
  const std::size_t n = word.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (word[j] < word[i]) ++smaller;
    }
    rank += smaller * factorial(n - 1 - i);
  }
  return rank;
}

namespace {

bool is_permutation_word(const Word& w, std::size_t n) {
  if (w.size() != n) return false;
  std::vector<bool> seen(n + 1, false);
  for (VarId id : w) {
    if (id < 1 || id > n || seen[id]) return false;
    seen[id] = true;
  }
  return true;
}

}  // namespace

std::vector<Rational> multilinear_coordinates(const NcPolynomial& f,
                                              const MultidegreeSignature& sig) {
  const std::size_t n = sig.size();
  for (const auto& [id, degree] : f.universe()) {
    if (id < 1 || id > n) continue;
    if (degree != sig.degrees[id - 1]) {
      throw SignatureMismatch("x" + std::to_string(id) + " has degree " +
                              to_string(degree) + ", signature expects " +
                              to_string(sig.degrees[id - 1]));
    }
  }
  std::vector<Rational> coords(factorial(n));
  for (const auto& [w, c] : f.terms()) {
    if (!is_permutation_word(w, n)) {
      throw SignatureMismatch("polynomial is not multilinear in x1..x" +
                              std::to_string(n));
    }
    coords[permutation_rank(w)] = c;
  }
  return coords;
}

NcPolynomial from_multilinear_coordinates(std::span<const Rational> coords,
                                          const MultidegreeSignature& sig) {
  NcPolynomial f;
  const auto universe = sig.universe();
  for (const auto& [id, degree] : universe) f.declare(id, degree);
  const auto words = multilinear_monomials(sig);
  if (coords.size() != words.size()) {
    throw SignatureMismatch("coordinate vector has wrong length");
  }
  for (std::size_t i = 0; i < words.size(); ++i) f.add_term(words[i], coords[i]);
  return f;
}

std::vector<MultidegreeSignature> all_signatures(const GroupSpec& spec,
                                                 std::size_t n) {
  const std::size_t order = spec.order();
  std::vector<MultidegreeSignature> out;
  std::vector<std::size_t> index(n, 0);
  while (true) {
    MultidegreeSignature sig;
    for (std::size_t i : index) sig.degrees.push_back(spec.element_at(i));
    out.push_back(std::move(sig));
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++index[pos] < order) break;
      index[pos] = 0;
      if (pos == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace gpi
