#include "gpi/relfree.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "gpi/errors.hpp"
#include "gpi/grassmann_element.hpp"
#include "gpi/linalg.hpp"
#include "gpi/poly_text.hpp"

namespace gpi {

std::string to_string(const GradingMode& m) {
  switch (m.kind) {
    case GradingMode::Kind::natural: return "natural";
    case GradingMode::Kind::infty: return "infty";
    case GradingMode::Kind::k_star: return "kstar:" + std::to_string(m.k);
  }
  return "?";
}

GradingMode parse_grading_mode(const std::string& text) {
  if (text == "natural") return GradingMode::natural();
  if (text == "infty") return GradingMode::infty();
  auto parse_k = [&](std::size_t prefix) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(text.substr(prefix), &used);
      if (used + prefix != text.size() || k < 0) throw ParseError("bad k");
      return k;
    } catch (const std::logic_error&) {
      throw ParseError("bad grading mode '" + text + "'");
    }
  };
  if (text.rfind("kstar:", 0) == 0) return GradingMode::k_star(parse_k(6));
  if (text.rfind("k:", 0) == 0) {
    parse_k(2);
    throw Unsupported("unsupported: generators g_m unspecified in source");
  }
  throw ParseError("unknown grading mode '" + text + "'");
}

std::vector<VarId> RelFreeWord::evens() const {
  std::vector<VarId> out;
  for (const auto& l : letters)
    if (!l.odd) out.push_back(l.id);
  return out;
}

std::vector<VarId> RelFreeWord::odds() const {
  std::vector<VarId> out;
  for (const auto& l : letters)
    if (l.odd) out.push_back(l.id);
  return out;
}

std::size_t RelFreeWord::odd_count() const {
  std::size_t n = 0;
  for (const auto& l : letters) n += l.odd;
  for (const auto& l : commutators) n += l.odd;
  return n;
}

bool is_basis_word(const RelFreeWord& w, const GradingMode& mode) {
  if (!std::is_sorted(w.letters.begin(), w.letters.end())) return false;
  if (w.commutators.size() % 2) return false;
  for (std::size_t i = 1; i < w.commutators.size(); ++i) {
    if (w.commutators[i - 1].id >= w.commutators[i].id) return false;
  }
  switch (mode.kind) {
    case GradingMode::Kind::infty: return true;
    case GradingMode::Kind::k_star: return w.odd_count() <= static_cast<std::size_t>(mode.k);
    case GradingMode::Kind::natural: {
      if (!w.commutators.empty()) return false;
      const auto z = w.odds();
      return std::adjacent_find(z.begin(), z.end()) == z.end();
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Rewriting.
//
// The generic stage uses only consequences of [x1,x2,x3]: an adjacent
// inversion ab (a > b) becomes ba + [a,b]; commutators are central and the
// commutator tail is alternating in all of its slots. Each step lowers
// (inversion count, length) lexicographically, so the recursion terminates.
// The mode stage then applies the extra identities of each grading.

namespace {

using Terms = RelFreeElement::Terms;

void accumulate(Terms& terms, const RelFreeWord& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

// Appends `extra` slots to `tail`, sorting by id. Returns the sign of the
// sorting permutation, or 0 when an id repeats.
int merge_slots(std::vector<Letter>& tail, const std::vector<Letter>& extra,
                const RewriteFaults& faults) {
  tail.insert(tail.end(), extra.begin(), extra.end());
  int sign = 1;
  // Insertion sort, counting transpositions.
  for (std::size_t i = 1; i < tail.size(); ++i) {
    for (std::size_t j = i; j > 0 && tail[j - 1].id >= tail[j].id; --j) {
      if (tail[j - 1].id == tail[j].id) return 0;
      std::swap(tail[j - 1], tail[j]);
      sign = -sign;
    }
  }
  return faults.drop_slot_sign ? 1 : sign;
}

struct CacheKey {
  std::vector<Letter> letters;
  bool faulty;
  auto operator<=>(const CacheKey&) const = default;
};

const Terms& generic_normal_form(const std::vector<Letter>& letters, const RewriteFaults& faults) {
  thread_local std::map<CacheKey, Terms> cache;
  CacheKey key{letters, faults.drop_slot_sign};
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  Terms result;
  std::size_t i = 0;
  while (i + 1 < letters.size() && !(letters[i + 1] < letters[i])) ++i;
  if (i + 1 >= letters.size()) {
    accumulate(result, RelFreeWord{letters, {}}, Rational(1));
  } else {
    const Letter a = letters[i], b = letters[i + 1];
    std::vector<Letter> swapped = letters;
    std::swap(swapped[i], swapped[i + 1]);
    for (const auto& [w, c] : generic_normal_form(swapped, faults)) accumulate(result, w, c);
    if (a.id != b.id) {
      std::vector<Letter> rest;
      rest.reserve(letters.size() - 2);
      rest.insert(rest.end(), letters.begin(), letters.begin() + i);
      rest.insert(rest.end(), letters.begin() + i + 2, letters.end());
      for (const auto& [w, c] : generic_normal_form(rest, faults)) {
        RelFreeWord merged = w;
        const int sign = merge_slots(merged.commutators, {a, b}, faults);
        if (sign != 0) accumulate(result, merged, sign * c);
      }
    }
  }
  return cache.emplace(std::move(key), std::move(result)).first->second;
}

// Applies the mode's extra identities to a generically normal word.
void project(Terms& out, const RelFreeWord& w, const Rational& c, const GradingMode& mode) {
  switch (mode.kind) {
    case GradingMode::Kind::infty:
      accumulate(out, w, c);
      return;
    case GradingMode::Kind::k_star:
      if (w.odd_count() <= static_cast<std::size_t>(mode.k)) accumulate(out, w, c);
      return;
    case GradingMode::Kind::natural: {
      // Even variables are central; odd ones anticommute, so [z,z'] = 2zz'.
      for (const auto& l : w.commutators)
        if (!l.odd) return;
      std::vector<Letter> odds;
      RelFreeWord result;
      for (const auto& l : w.letters) {
        if (l.odd) {
          odds.push_back(l);
        } else {
          result.letters.push_back(l);
        }
      }
      odds.insert(odds.end(), w.commutators.begin(), w.commutators.end());
      Rational coeff = c;
      for (std::size_t p = 0; p < w.commutators.size(); p += 2) coeff *= 2;
      for (std::size_t i = 1; i < odds.size(); ++i) {
        for (std::size_t j = i; j > 0 && odds[j - 1].id >= odds[j].id; --j) {
          if (odds[j - 1].id == odds[j].id) return;
          std::swap(odds[j - 1], odds[j]);
          coeff = -coeff;
        }
      }
      result.letters.insert(result.letters.end(), odds.begin(), odds.end());
      accumulate(out, result, coeff);
      return;
    }
  }
}

Letter letter_for(VarId id, const GroupElement& degree) {
  if (degree.residues.empty()) return {id, false};
  if (degree.residues.size() == 1 && degree.residues[0] <= 1) {
    return {id, degree.residues[0] == 1};
  }
  throw MalformedElement("relatively free engine needs Z2 (or trivial) degrees, got " +
                         to_string(degree) + " for x" + std::to_string(id));
}

// letters * tail_a * tail_b, normalized and projected into `out`.
void multiply_into(Terms& out, const std::vector<Letter>& letters,
                   const std::vector<Letter>& tail_a, const std::vector<Letter>& tail_b,
                   const Rational& c, const GradingMode& mode, const RewriteFaults& faults) {
  for (const auto& [w, coeff] : generic_normal_form(letters, faults)) {
    RelFreeWord merged = w;
    int sign = merge_slots(merged.commutators, tail_a, faults);
    if (sign == 0) continue;
    sign *= merge_slots(merged.commutators, tail_b, faults);
    if (sign == 0) continue;
    project(out, merged, sign * coeff * c, mode);
  }
}

}  // namespace

RelFreeElement RelFreeElement::constant(GradingMode mode, const Rational& c) {
  RelFreeElement e(mode);
  e.add_term(RelFreeWord{}, c);
  return e;
}

RelFreeElement RelFreeElement::letter(GradingMode mode, Letter l) {
  RelFreeElement e(mode);
  Terms t;
  project(t, RelFreeWord{{l}, {}}, Rational(1), mode);
  e.terms_ = std::move(t);
  return e;
}

void RelFreeElement::add_term(const RelFreeWord& w, const Rational& c) {
  if (!is_basis_word(w, mode_)) {
    throw MalformedElement("'" + print_word(w) + "' is not a basis word in mode " +
                           to_string(mode_));
  }
  accumulate(terms_, w, c);
}

RelFreeElement& RelFreeElement::operator+=(const RelFreeElement& o) {
  if (!(mode_ == o.mode_)) throw ModeMismatch("relatively free elements of different modes");
  for (const auto& [w, c] : o.terms_) accumulate(terms_, w, c);
  return *this;
}

RelFreeElement& RelFreeElement::operator-=(const RelFreeElement& o) {
  if (!(mode_ == o.mode_)) throw ModeMismatch("relatively free elements of different modes");
  for (const auto& [w, c] : o.terms_) accumulate(terms_, w, -c);
  return *this;
}

RelFreeElement& RelFreeElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

RelFreeElement normal_form(const NcPolynomial& f, const GradingMode& mode,
                           const RewriteFaults& faults) {
  RelFreeElement result(mode);
  Terms out;
  for (const auto& [w, c] : f.terms()) {
    std::vector<Letter> letters;
    letters.reserve(w.size());
    for (VarId id : w) letters.push_back(letter_for(id, f.universe().at(id)));
    multiply_into(out, letters, {}, {}, c, mode, faults);
  }
  for (const auto& [w, c] : out) result.add_term(w, c);
  return result;
}

RelFreeElement relfree_mul(const RelFreeElement& a, const RelFreeElement& b) {
  if (!(a.mode() == b.mode())) throw ModeMismatch("cannot multiply elements of different modes");
  Terms out;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      std::vector<Letter> letters = wa.letters;
      letters.insert(letters.end(), wb.letters.begin(), wb.letters.end());
      multiply_into(out, letters, wa.commutators, wb.commutators, ca * cb, a.mode(), {});
    }
  }
  RelFreeElement result(a.mode());
  for (const auto& [w, c] : out) result.add_term(w, c);
  return result;
}

RelFreeElement rename_variables(const RelFreeElement& a, const std::map<VarId, VarId>& renaming) {
  auto rename = [&](Letter l) {
    auto it = renaming.find(l.id);
    if (it != renaming.end()) l.id = it->second;
    return l;
  };
  Terms out;
  for (const auto& [w, c] : a.terms()) {
    std::vector<Letter> letters, slots;
    for (const auto& l : w.letters) letters.push_back(rename(l));
    for (const auto& l : w.commutators) slots.push_back(rename(l));
    multiply_into(out, letters, slots, {}, c, a.mode(), {});
  }
  RelFreeElement result(a.mode());
  for (const auto& [w, c] : out) result.add_term(w, c);
  return result;
}

NcPolynomial expand(const RelFreeWord& w) {
  const GroupSpec z2 = GroupSpec::z2();
  auto var = [&](const Letter& l) { return NcPolynomial::variable(l.id, z2.make({l.odd ? 1 : 0})); };
  NcPolynomial p = NcPolynomial::constant(1);
  for (const auto& l : w.letters) p = p * var(l);
  for (std::size_t i = 0; i + 1 < w.commutators.size(); i += 2) {
    p = p * commutator(var(w.commutators[i]), var(w.commutators[i + 1]));
  }
  return p;
}

NcPolynomial expand(const RelFreeElement& a) {
  NcPolynomial p;
  for (const auto& [w, c] : a.terms()) p += expand(w) * c;
  return p;
}

std::string print_word(const RelFreeWord& w) {
  auto name = [](const Letter& l) { return (l.odd ? "z" : "y") + std::to_string(l.id); };
  std::string s;
  for (const auto& l : w.letters) {
    if (!s.empty()) s += "*";
    s += name(l);
  }
  for (std::size_t i = 0; i + 1 < w.commutators.size(); i += 2) {
    if (!s.empty()) s += "*";
    s += "[" + name(w.commutators[i]) + "," + name(w.commutators[i + 1]) + "]";
  }
  return s.empty() ? "1" : s;
}

RelFreeElement parse_relfree(std::string_view text, const GradingMode& mode) {
  return normal_form(parse_polynomial(text, GroupSpec::z2()), mode);
}

std::string print_relfree(const RelFreeElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : a.terms()) {
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string word = print_word(w);
    if (magnitude == 1) {
      out += word;
    } else if (word == "1") {
      out += to_string(magnitude);
    } else {
      out += to_string(magnitude) + "*" + word;
    }
  }
  return out;
}

std::vector<RelFreeWord> multilinear_basis_words(const GradingMode& mode,
                                                 const MultidegreeSignature& sig) {
  const std::size_t n = sig.size();
  std::vector<Letter> all;
  for (std::size_t i = 0; i < n; ++i) all.push_back(letter_for(i + 1, sig.degrees[i]));
  std::vector<RelFreeWord> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (std::popcount(mask) % 2) continue;
    RelFreeWord w;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) {
        w.commutators.push_back(all[i]);
      } else {
        w.letters.push_back(all[i]);
      }
    }
    std::sort(w.letters.begin(), w.letters.end());
    if (is_basis_word(w, mode)) out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

GrassmannSpec grassmann_for(const GradingMode& mode, int n) {
  GrassmannSpec spec;
  spec.n_generators = n;
  switch (mode.kind) {
    case GradingMode::Kind::natural: spec.deg_kind = GrassmannDegree::natural; break;
    case GradingMode::Kind::infty: spec.deg_kind = GrassmannDegree::infty; break;
    case GradingMode::Kind::k_star:
      spec.deg_kind = GrassmannDegree::k_star;
      spec.k = mode.k;
      break;
  }
  return spec;
}

}  // namespace

SoundnessReport soundness_probe(const NcPolynomial& f, const GradingMode& mode, int n_generators,
                                std::size_t trials, std::uint64_t seed,
                                const RewriteFaults& faults) {
  const GroupSpec z2 = GroupSpec::z2();
  // Read trivial-group degrees as even Z2 degrees.
  NcPolynomial f2;
  for (const auto& [id, degree] : f.universe()) {
    const Letter l = letter_for(id, degree);
    f2.declare(id, z2.make({l.odd ? 1 : 0}));
  }
  for (const auto& [w, c] : f.terms()) f2.add_term(w, c);

  const NcPolynomial difference = f2 - expand(normal_form(f2, mode, faults));
  const GrassmannSpec spec = grassmann_for(mode, n_generators);
  std::mt19937_64 rng(seed);
  SoundnessReport report;
  const auto vars = f2.occurring_variables();
  for (std::size_t t = 0; t < trials; ++t) {
    std::map<VarId, GrassmannElement> values;
    for (VarId id : vars) {
      values[id] = random_homogeneous(spec, f2.universe().at(id).residues[0], rng);
    }
    ++report.trials;
    const GrassmannElement value = evaluate_in_grassmann(difference, values);
    if (!value.is_zero()) {
      ++report.discrepancies;
      if (!report.witness) {
        std::string text;
        for (const auto& [id, e] : values) {
          text += "x" + std::to_string(id) + " -> " + e.str() + "; ";
        }
        report.witness = text + "residual " + value.str();
      }
    }
  }
  return report;
}

namespace {

RelFreeElement word_element(const GradingMode& mode, const RelFreeWord& w) {
  RelFreeElement e(mode);
  e.add_term(w, Rational(1));
  return e;
}

// Checks S1*S2 for linear independence. Fills the witness on failure.
bool products_independent(const GradingMode& mode, const std::vector<RelFreeWord>& s1,
                          const std::vector<RelFreeWord>& s2, std::string& witness) {
  std::vector<RelFreeElement> products;
  std::vector<std::string> names;
  for (const auto& a : s1) {
    for (const auto& b : s2) {
      products.push_back(relfree_mul(word_element(mode, a), word_element(mode, b)));
      names.push_back(print_word(a) + "·" + print_word(b));
      if (products.back().is_zero()) {
        witness = names.back() + " = 0";
        return false;
      }
    }
  }
  std::map<RelFreeWord, std::size_t> column;
  for (const auto& p : products)
    for (const auto& [w, c] : p.terms()) column.emplace(w, 0);
  std::size_t next = 0;
  for (auto& [w, idx] : column) idx = next++;
  // Columns of the transposed system are the products; a kernel vector is a
  // dependency among them.
  SparseMatrix m(products.size(), column.size());
  SparseMatrix transposed(column.size(), products.size());
  for (std::size_t i = 0; i < products.size(); ++i) {
    for (const auto& [w, c] : products[i].terms()) {
      m.set(i, column.at(w), c);
      transposed.set(column.at(w), i, c);
    }
  }
  if (rref(m).dim() == products.size()) return true;
  const Subspace dependencies = kernel_basis(transposed);
  const auto& dep = dependencies.basis().front();
  witness.clear();
  for (const auto& [i, c] : dep) {
    if (!witness.empty()) witness += " + ";
    witness += "(" + to_string(c) + ")*" + names[i];
  }
  witness += " = 0";
  return false;
}

}  // namespace

MultiplicativityVerdict partial_multiplicativity_check(const GradingMode& mode,
                                                       std::size_t degree_bound,
                                                       std::size_t sample_count,
                                                       std::uint64_t seed) {
  MultiplicativityVerdict verdict;
  auto record_failure = [&](std::vector<RelFreeWord> a, std::vector<RelFreeWord> b,
                            std::string witness) {
    verdict.holds = false;
    verdict.left = std::move(a);
    verdict.right = std::move(b);
    verdict.witness = std::move(witness);
  };

  // Single letters in two one-variable alphabets.
  for (int p1 = 0; p1 < 2 && verdict.holds; ++p1) {
    for (int p2 = 0; p2 < 2 && verdict.holds; ++p2) {
      const RelFreeWord a{{Letter{1, p1 == 1}}, {}};
      const RelFreeWord b{{Letter{2, p2 == 1}}, {}};
      if (!is_basis_word(a, mode) || !is_basis_word(b, mode)) continue;
      std::string witness;
      ++verdict.samples_checked;
      if (!products_independent(mode, {a}, {b}, witness)) record_failure({a}, {b}, witness);
    }
  }
  if (!verdict.holds) return verdict;

  // Random basis words over two disjoint alphabets; each alphabet has
  // degree_bound even and degree_bound odd letters.
  const std::size_t bound = std::max<std::size_t>(degree_bound, 1);
  std::mt19937_64 rng(seed);
  auto alphabet = [&](VarId base) {
    std::vector<Letter> out;
    for (std::size_t i = 0; i < 2 * bound; ++i) out.push_back(Letter{base + i, i % 2 == 1});
    return out;
  };
  const auto a1 = alphabet(1), a2 = alphabet(2 * bound + 1);
  std::uniform_int_distribution<std::size_t> length(1, bound);
  std::uniform_int_distribution<std::size_t> set_size(1, 3);
  auto random_word = [&](const std::vector<Letter>& alpha) -> std::optional<RelFreeWord> {
    std::uniform_int_distribution<std::size_t> pick(0, alpha.size() - 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
      const std::size_t len = length(rng);
      std::vector<Letter> letters;
      for (std::size_t i = 0; i < len; ++i) letters.push_back(alpha[pick(rng)]);
      Terms terms;
      multiply_into(terms, letters, {}, {}, Rational(1), mode, {});
      if (terms.empty()) continue;
      std::uniform_int_distribution<std::size_t> which(0, terms.size() - 1);
      auto it = terms.begin();
      std::advance(it, which(rng));
      return it->first;
    }
    return std::nullopt;
  };
  auto random_set = [&](const std::vector<Letter>& alpha) {
    std::set<RelFreeWord> words;
    const std::size_t target = set_size(rng);
    for (std::size_t tries = 0; words.size() < target && tries < 16; ++tries) {
      if (auto w = random_word(alpha)) words.insert(*w);
    }
    return std::vector<RelFreeWord>(words.begin(), words.end());
  };
  for (std::size_t s = 0; s < sample_count; ++s) {
    auto s1 = random_set(a1);
    auto s2 = random_set(a2);
    if (s1.empty() || s2.empty()) continue;
    ++verdict.samples_checked;
    std::string witness;
    if (!products_independent(mode, s1, s2, witness)) {
      record_failure(std::move(s1), std::move(s2), std::move(witness));
      return verdict;
    }
  }
  return verdict;
}

}  // namespace gpi
