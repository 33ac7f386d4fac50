#include "gpi/identities.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "gpi/errors.hpp"
#include "gpi/generic_model.hpp"
#include "gpi/poly_text.hpp"

namespace gpi {

namespace {

std::string sig_text(const MultidegreeSignature& sig) {
  std::string s = "(";
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) s += ",";
    const auto& r = sig.degrees[i].residues;
    s += r.empty() ? "e" : r.size() == 1 ? std::to_string(r[0]) : to_string(sig.degrees[i]);
  }
  return s + ")";
}

std::vector<std::size_t> factorials(std::size_t n) {
  std::vector<std::size_t> f(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) f[i] = f[i - 1] * i;
  return f;
}

SparseRow to_row(const std::map<std::size_t, Rational>& acc) {
  SparseRow row;
  for (const auto& [c, v] : acc)
    if (v != 0) row.emplace_back(c, v);
  return row;
}

IdentitySubspace kernel_result(const MultidegreeSignature& sig, const RowSpaceBuilder& rows) {
  return {sig, kernel_of(rows.finish())};
}

void check_cells(std::size_t rows, std::size_t cols, const ResourceGuard& guard,
                 const std::string& what) {
  const long double cells = static_cast<long double>(rows) * static_cast<long double>(cols);
  if (cells > static_cast<long double>(guard.max_cells)) {
    throw GuardExceeded(what + ": about " + std::to_string(rows) + " rows x " +
                            std::to_string(cols) + " columns exceeds the resource guard",
                        rows);
  }
}

// Products of all permutations of the basis tuple, written into one row per
// output coordinate.
void permutation_products(const StructureConstantAlgebra& a, const std::vector<std::size_t>& tuple,
                          const std::vector<std::size_t>& fact,
                          std::map<std::size_t, SparseRow>& rows) {
  struct Frame {
    static void run(const StructureConstantAlgebra& a, const std::vector<std::size_t>& tuple,
                    const std::vector<std::size_t>& fact, std::map<std::size_t, SparseRow>& rows,
                    const AlgebraElement& cur, std::uint32_t used, std::size_t depth,
                    std::size_t rank) {
      const std::size_t n = tuple.size();
      if (depth == n) {
        for (const auto& [coord, v] : cur) rows[coord].emplace_back(rank, v);
        return;
      }
      std::size_t smaller = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (used >> i & 1u) continue;
        AlgebraElement next = a.multiply_basis(cur, tuple[i]);
        if (!next.empty()) {
          run(a, tuple, fact, rows, next, used | (1u << i), depth + 1,
              rank + smaller * fact[n - 1 - depth]);
        }
        ++smaller;
      }
    }
  };
  Frame::run(a, tuple, fact, rows, a.unit(), 0, 0, 0);
}

// Z2 degree of each variable, or nullopt when the signature is ungraded.
std::optional<std::vector<int>> z2_degrees(const MultidegreeSignature& sig) {
  bool graded = false, ungraded = false;
  std::vector<int> d;
  for (const auto& g : sig.degrees) {
    if (g.residues.empty()) {
      ungraded = true;
      d.push_back(0);
    } else if (g.residues.size() == 1 && (g.residues[0] == 0 || g.residues[0] == 1)) {
      graded = true;
      d.push_back(g.residues[0]);
    } else {
      throw SignatureMismatch("Grassmann targets take Z2 or trivial-group signatures, got " +
                              sig_text(sig));
    }
  }
  if (graded && ungraded) throw SignatureMismatch("mixed group shapes in " + sig_text(sig));
  if (ungraded) return std::nullopt;
  return d;
}

struct Budget {
  int odd = 0;   // generators of Z2 degree 1
  int even = 0;  // generators of Z2 degree 0
};

Budget budget_of(const GrassmannSpec& spec, bool graded) {
  if (!graded) return {0, spec.n_generators};
  Budget b;
  for (int i = 1; i <= spec.n_generators; ++i) (spec.generator_degree(i) ? b.odd : b.even)++;
  return b;
}

// realizable[mask]: bit i of mask is the length parity of the i-th value.
std::vector<bool> realizable_patterns(const Budget& b, const std::vector<int>& d) {
  const std::size_t n = d.size();
  std::vector<bool> out(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < out.size(); ++mask) {
    int u = 0, v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int p = static_cast<int>(mask >> i & 1u);
      u += d[i];
      v += (p + d[i]) % 2;
    }
    out[mask] = u <= b.odd && v <= b.even;
  }
  return out;
}

GrassmannSpec with_generators(GrassmannSpec spec, int n) {
  spec.n_generators = n;
  return spec;
}

std::vector<int> degrees_or_zero(const MultidegreeSignature& sig, bool& graded) {
  auto d = z2_degrees(sig);
  graded = d.has_value();
  return d ? *d : std::vector<int>(sig.size(), 0);
}

std::string spec_name(const GrassmannSpec& spec) {
  std::string s = "E_" + std::to_string(spec.n_generators) + " ";
  switch (spec.deg_kind) {
    case GrassmannDegree::natural: return s + "natural";
    case GrassmannDegree::infty: return s + "infty";
    case GrassmannDegree::k_star: return s + "kstar(" + std::to_string(spec.k) + ")";
    case GrassmannDegree::explicit_values: {
      s += "explicit(";
      for (std::size_t i = 0; i < spec.explicit_degrees.size(); ++i)
        s += (i ? "," : "") + std::to_string(spec.explicit_degrees[i]);
      return s + ")";
    }
  }
  return s;
}

std::vector<std::size_t> subset_members(std::uint32_t mask, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1u) out.push_back(i);
  return out;
}

// Nonempty proper subsets of {0..n-1} by size, then lexicographically.
std::vector<std::uint32_t> ordered_subsets(std::size_t n) {
  std::vector<std::uint32_t> out;
  for (std::size_t size = 1; size < n; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      std::uint32_t mask = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) mask |= 1u << i;
      out.push_back(mask);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

MultidegreeSignature restrict_sig(const MultidegreeSignature& sig,
                                  const std::vector<std::size_t>& positions) {
  MultidegreeSignature s;
  for (std::size_t p : positions) s.degrees.push_back(sig.degrees[p]);
  return s;
}

// Words of a component basis, with x_i renamed to positions[i-1]+1.
std::vector<Word> renamed_monomials(const std::vector<std::size_t>& positions) {
  std::vector<Word> words = multilinear_monomials(positions.size());
  for (auto& w : words)
    for (auto& id : w) id = positions[id - 1] + 1;
  return words;
}

std::vector<std::pair<Word, Rational>> as_terms(const SparseRow& row, const std::vector<Word>& words) {
  std::vector<std::pair<Word, Rational>> out;
  for (const auto& [c, v] : row) out.emplace_back(words[c], v);
  return out;
}

}  // namespace

std::string GrassmannMatrixTarget::describe() const {
  if (shape.sizes == std::vector<int>{1}) return spec_name(spec);
  std::string s = "UT(";
  for (std::size_t i = 0; i < shape.sizes.size(); ++i)
    s += (i ? "," : "") + std::to_string(shape.sizes[i]);
  return s + "; " + spec_name(spec) + ")";
}

std::string describe(const EvalTarget& target) {
  if (const auto* a = std::get_if<AlgebraPtr>(&target)) return (*a)->description;
  return std::get<GrassmannMatrixTarget>(target).describe();
}

IdentitySubspace identities_by_evaluation(const StructureConstantAlgebra& a,
                                          const MultidegreeSignature& sig,
                                          const ResourceGuard& guard) {
  const std::size_t n = sig.size();
  if (n > 12) throw GuardExceeded("signature too long for evaluation", n);
  std::vector<std::vector<std::size_t>> choices(n);
  std::size_t tuples = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (!a.group().conforms(sig.degrees[i])) {
      throw SignatureMismatch("signature " + sig_text(sig) + " does not match the algebra's group");
    }
    for (std::size_t b = 0; b < a.dim(); ++b)
      if (a.degree_of(b) == sig.degrees[i]) choices[i].push_back(b);
    tuples *= std::max<std::size_t>(choices[i].size(), 1);
  }
  const auto fact = factorials(n);
  check_cells(tuples * a.dim(), fact[n], guard, "identities_by_evaluation");
  RowSpaceBuilder builder(fact[n], guard);
  for (const auto& c : choices)
    if (c.empty()) return kernel_result(sig, builder);  // the component is everything

  std::vector<std::size_t> idx(n, 0), tuple(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) tuple[i] = choices[i][idx[i]];
    std::map<std::size_t, SparseRow> rows;
    permutation_products(a, tuple, fact, rows);
    for (auto& [coord, row] : rows) {
      std::sort(row.begin(), row.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      builder.add(row);
    }
    if (builder.is_full()) break;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++idx[i] < choices[i].size()) break;
      idx[i] = 0;
      if (i == 0) return kernel_result(sig, builder);
    }
    if (n == 0) break;
  }
  return kernel_result(sig, builder);
}

int default_truncation(const GrassmannSpec& spec, std::size_t total_degree) {
  const int base = 2 * static_cast<int>(total_degree);
  return spec.deg_kind == GrassmannDegree::k_star ? base + spec.k : base;
}

int saturating_generators(const GrassmannSpec& spec, const MultidegreeSignature& sig) {
  if (spec.deg_kind == GrassmannDegree::explicit_values) return spec.n_generators;
  bool graded = false;
  const auto d = degrees_or_zero(sig, graded);
  const int n = static_cast<int>(sig.size());
  const int lo = spec.deg_kind == GrassmannDegree::k_star ? spec.k : 0;
  const int hi = lo + 2 * n + 2;
  const auto full = realizable_patterns(budget_of(with_generators(spec, hi), graded), d);
  for (int N = lo; N < hi; ++N) {
    if (realizable_patterns(budget_of(with_generators(spec, N), graded), d) == full) return N;
  }
  return hi;
}

std::vector<SparseRow> grassmann_fast_rows(const GrassmannMatrixTarget& t,
                                           const MultidegreeSignature& sig,
                                           bool require_saturated) {
  t.spec.validate();
  t.shape.validate();
  const std::size_t n = sig.size();
  if (n > 10) throw GuardExceeded("signature too long for Grassmann rows", n);
  bool graded = false;
  const auto d = degrees_or_zero(sig, graded);
  const auto patterns = realizable_patterns(budget_of(t.spec, graded), d);
  if (require_saturated) {
    const int need = saturating_generators(t.spec, sig);
    if (t.spec.n_generators < need) {
      throw GuardExceeded("N = " + std::to_string(t.spec.n_generators) +
                              " realizes too few parity patterns for signature " + sig_text(sig) +
                              "; use N >= " + std::to_string(need),
                          static_cast<std::size_t>(need));
    }
  }
  const std::vector<Word> perms = multilinear_monomials(n);

  // Matrix-unit chains: for each choice of positions, the columns whose
  // ordered product lands on one fixed output unit.
  std::set<std::vector<std::size_t>> chains;
  const int size = t.shape.total();
  if (size == 1) {
    std::vector<std::size_t> all(perms.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    chains.insert(all);
  } else {
    std::vector<std::pair<int, int>> units;
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c)
        if (t.shape.allows(r, c)) units.emplace_back(r, c);
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      std::map<std::pair<int, int>, std::vector<std::size_t>> by_output;
      for (std::size_t col = 0; col < perms.size(); ++col) {
        const auto& w = perms[col];
        auto cur = units[idx[w[0] - 1]];
        bool alive = true;
        for (std::size_t p = 1; p < n && alive; ++p) {
          const auto& u = units[idx[w[p] - 1]];
          if (u.first != cur.second) alive = false;
          cur.second = u.second;
        }
        if (alive) by_output[cur].push_back(col);
      }
      for (auto& [out, cols] : by_output) chains.insert(std::move(cols));
      std::size_t i = n;
      bool done = true;
      while (i > 0) {
        --i;
        if (++idx[i] < units.size()) {
          done = false;
          break;
        }
        idx[i] = 0;
      }
      if (done) break;
    }
  }

  std::vector<SparseRow> rows;
  for (std::size_t mask = 0; mask < patterns.size(); ++mask) {
    if (!patterns[mask]) continue;
    std::vector<int> sign(perms.size());
    for (std::size_t col = 0; col < perms.size(); ++col) {
      const auto& w = perms[col];
      int inv = 0;
      for (std::size_t a = 0; a < n; ++a) {
        if (!(mask >> (w[a] - 1) & 1u)) continue;
        for (std::size_t b = a + 1; b < n; ++b)
          if (w[a] > w[b] && (mask >> (w[b] - 1) & 1u)) ++inv;
      }
      sign[col] = inv % 2 ? -1 : 1;
    }
    for (const auto& cols : chains) {
      SparseRow row;
      for (std::size_t col : cols) row.emplace_back(col, Rational(sign[col]));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

IdentitySubspace identities_by_evaluation(const GrassmannMatrixTarget& t,
                                          const MultidegreeSignature& sig,
                                          const ResourceGuard& guard) {
  const auto rows = grassmann_fast_rows(t, sig, true);
  const std::size_t cols = factorial(sig.size());
  check_cells(rows.size(), cols, guard, "identities_by_evaluation");
  RowSpaceBuilder builder(cols, guard);
  for (const auto& r : rows) {
    builder.add(r);
    if (builder.is_full()) break;
  }
  return kernel_result(sig, builder);
}

IdentitySubspace identities_by_evaluation(const EvalTarget& t, const MultidegreeSignature& sig,
                                          const ResourceGuard& guard) {
  if (const auto* a = std::get_if<AlgebraPtr>(&t)) return identities_by_evaluation(**a, sig, guard);
  return identities_by_evaluation(std::get<GrassmannMatrixTarget>(t), sig, guard);
}

void TIdealPresentation::add(const NcPolynomial& f) {
  const auto vars = f.occurring_variables();
  for (const auto& [w, c] : f.terms()) {
    std::vector<VarId> sorted = w;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != vars) {
      throw MalformedElement("T-ideal generators must be multilinear in their own variables");
    }
  }
  for (VarId id : vars) {
    if (!group.conforms(f.universe().at(id))) {
      throw MalformedElement("generator degree outside the presentation's group");
    }
  }
  if (!f.is_zero()) generators.push_back(f);
}

void TIdealPresentation::add_all_gradings(const NcPolynomial& f) {
  const auto vars = f.occurring_variables();
  const auto elems = group.elements();
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    NcPolynomial g;
    for (std::size_t i = 0; i < vars.size(); ++i) g.declare(vars[i], elems[idx[i]]);
    for (const auto& [w, c] : f.terms()) g.add_term(w, c);
    add(g);
    std::size_t i = vars.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++idx[i] < elems.size()) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
    if (done) break;
  }
}

namespace {

struct ConsequenceEnumerator {
  const GroupSpec& group;
  const MultidegreeSignature& sig;
  const std::vector<std::size_t>& fact;
  RowSpaceBuilder& builder;

  std::size_t n = 0;
  std::vector<GroupElement> target;                        // degree of each generator variable
  std::vector<std::pair<std::vector<std::size_t>, Rational>> terms;  // words as slot indices
  std::vector<Word> blocks;
  std::uint32_t used = 0;

  void emit(const Word& u0, const Word& u1) {
    std::map<std::size_t, Rational> acc;
    Word word;
    for (const auto& [slots, c] : terms) {
      word = u0;
      for (std::size_t s : slots) word.insert(word.end(), blocks[s].begin(), blocks[s].end());
      word.insert(word.end(), u1.begin(), u1.end());
      acc[permutation_rank(word)] += c;
    }
    const SparseRow row = to_row(acc);
    if (!row.empty()) builder.add(row);
  }

  void finish_word() {
    Word rest;
    for (std::size_t v = 0; v < n; ++v)
      if (!(used >> v & 1u)) rest.push_back(v + 1);
    do {
      for (std::size_t split = 0; split <= rest.size(); ++split) {
        emit(Word(rest.begin(), rest.begin() + split), Word(rest.begin() + split, rest.end()));
        if (builder.is_full()) return;
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  }

  void extend(std::size_t j, const GroupElement& deg) {
    for (std::size_t v = 0; v < n && !builder.is_full(); ++v) {
      if (used >> v & 1u) continue;
      used |= 1u << v;
      blocks[j].push_back(v + 1);
      const GroupElement next = group.op(deg, sig.degrees[v]);
      if (next == target[j]) fill(j + 1);
      extend(j, next);
      blocks[j].pop_back();
      used &= ~(1u << v);
    }
  }

  void fill(std::size_t j) {
    if (builder.is_full()) return;
    if (j == target.size()) {
      finish_word();
      return;
    }
    // The empty monomial (the unit) is a legal substitution in degree e.
    if (target[j] == group.identity()) fill(j + 1);
    extend(j, group.identity());
  }
};

}  // namespace

IdentitySubspace identities_by_consequences(const TIdealPresentation& t,
                                            const MultidegreeSignature& sig,
                                            const ResourceGuard& guard) {
  const std::size_t n = sig.size();
  if (n > 10) throw GuardExceeded("signature too long for consequence enumeration", n);
  for (const auto& g : sig.degrees) {
    if (!t.group.conforms(g)) {
      throw SignatureMismatch("signature " + sig_text(sig) + " does not match the presentation");
    }
  }
  const auto fact = factorials(n);
  RowSpaceBuilder builder(fact[n], guard);
  for (const auto& f : t.generators) {
    if (builder.is_full()) break;
    const auto vars = f.occurring_variables();
    ConsequenceEnumerator e{t.group, sig, fact, builder, n, {}, {}, {}, 0};
    for (VarId v : vars) e.target.push_back(f.universe().at(v));
    for (const auto& [w, c] : f.terms()) {
      std::vector<std::size_t> slots;
      for (VarId id : w)
        slots.push_back(static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), id) -
                                                 vars.begin()));
      e.terms.emplace_back(std::move(slots), c);
    }
    e.blocks.assign(vars.size(), {});
    e.fill(0);
  }
  return {sig, builder.finish()};
}

const Subspace& ComponentProvider::component(const MultidegreeSignature& sig) const {
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(sig); it != cache_.end()) return *it->second;
  }
  auto computed = std::make_shared<const Subspace>(compute(sig));
  std::lock_guard lock(mu_);
  return *cache_.emplace(sig, std::move(computed)).first->second;
}

namespace {

class EvaluationProvider : public ComponentProvider {
 public:
  EvaluationProvider(EvalTarget t, ResourceGuard g) : target_(std::move(t)), guard_(g) {}
  std::string describe() const override { return gpi::describe(target_); }

 protected:
  Subspace compute(const MultidegreeSignature& sig) const override {
    return identities_by_evaluation(target_, sig, guard_).space;
  }

 private:
  EvalTarget target_;
  ResourceGuard guard_;
};

class ConsequenceProvider : public ComponentProvider {
 public:
  ConsequenceProvider(TIdealPresentation t, ResourceGuard g) : t_(std::move(t)), guard_(g) {}
  std::string describe() const override {
    std::string s = "<";
    for (std::size_t i = 0; i < t_.generators.size(); ++i)
      s += (i ? ", " : "") + print_polynomial(t_.generators[i]);
    return s + ">";
  }

 protected:
  Subspace compute(const MultidegreeSignature& sig) const override {
    return identities_by_consequences(t_, sig, guard_).space;
  }

 private:
  TIdealPresentation t_;
  ResourceGuard guard_;
};

class ProductProvider : public ComponentProvider {
 public:
  ProductProvider(ProviderPtr a, ProviderPtr b, ResourceGuard g)
      : a_(std::move(a)), b_(std::move(b)), guard_(g) {}
  std::string describe() const override {
    return "(" + a_->describe() + ")(" + b_->describe() + ")";
  }

 protected:
  Subspace compute(const MultidegreeSignature& sig) const override {
    return tideal_product(*a_, *b_, sig, guard_).space;
  }

 private:
  ProviderPtr a_, b_;
  ResourceGuard guard_;
};

}  // namespace

ProviderPtr evaluation_provider(EvalTarget target, ResourceGuard guard) {
  return std::make_shared<EvaluationProvider>(std::move(target), guard);
}

ProviderPtr consequence_provider(TIdealPresentation t, ResourceGuard guard) {
  return std::make_shared<ConsequenceProvider>(std::move(t), guard);
}

ProviderPtr product_provider(ProviderPtr t1, ProviderPtr t2, ResourceGuard guard) {
  return std::make_shared<ProductProvider>(std::move(t1), std::move(t2), guard);
}

IdentitySubspace tideal_product(const ComponentProvider& t1, const ComponentProvider& t2,
                                const MultidegreeSignature& sig, const ResourceGuard& guard) {
  const std::size_t n = sig.size();
  RowSpaceBuilder builder(factorial(n), guard);
  for (std::uint32_t mask : ordered_subsets(n)) {
    const auto s = subset_members(mask, n);
    const auto sc = subset_members(~mask & ((1u << n) - 1), n);
    const Subspace& c1 = t1.component(restrict_sig(sig, s));
    if (c1.dim() == 0) continue;
    const Subspace& c2 = t2.component(restrict_sig(sig, sc));
    if (c2.dim() == 0) continue;
    const auto w1 = renamed_monomials(s), w2 = renamed_monomials(sc);
    for (const auto& f : c1.basis()) {
      const auto ft = as_terms(f, w1);
      for (const auto& g : c2.basis()) {
        std::map<std::size_t, Rational> acc;
        Word word;
        for (const auto& [a, x] : ft) {
          for (const auto& [col, y] : g) {
            word = a;
            word.insert(word.end(), w2[col].begin(), w2[col].end());
            acc[permutation_rank(word)] += x * y;
          }
        }
        builder.add(to_row(acc));
        if (builder.is_full()) return {sig, builder.finish()};
      }
    }
  }
  return {sig, builder.finish()};
}

IdentitySubspace tideal_product_bordered(const ComponentProvider& t1, const ComponentProvider& t2,
                                         const MultidegreeSignature& sig,
                                         const ResourceGuard& guard) {
  const std::size_t n = sig.size();
  const std::uint32_t all = (1u << n) - 1;
  RowSpaceBuilder builder(factorial(n), guard);
  for (std::uint32_t m1 = 1; m1 <= all; ++m1) {
    for (std::uint32_t m2 = 1; m2 <= all; ++m2) {
      if (m1 & m2) continue;
      const auto s1 = subset_members(m1, n), s2 = subset_members(m2, n);
      const Subspace& c1 = t1.component(restrict_sig(sig, s1));
      if (c1.dim() == 0) continue;
      const Subspace& c2 = t2.component(restrict_sig(sig, s2));
      if (c2.dim() == 0) continue;
      const auto w1 = renamed_monomials(s1), w2 = renamed_monomials(s2);
      Word rest;
      for (std::size_t v = 0; v < n; ++v)
        if (!((m1 | m2) >> v & 1u)) rest.push_back(v + 1);
      do {
        for (std::size_t i = 0; i <= rest.size(); ++i) {
          for (std::size_t j = i; j <= rest.size(); ++j) {
            for (const auto& f : c1.basis()) {
              for (const auto& g : c2.basis()) {
                std::map<std::size_t, Rational> acc;
                for (const auto& [a, x] : f) {
                  for (const auto& [b, y] : g) {
                    Word word(rest.begin(), rest.begin() + i);
                    word.insert(word.end(), w1[a].begin(), w1[a].end());
                    word.insert(word.end(), rest.begin() + i, rest.begin() + j);
                    word.insert(word.end(), w2[b].begin(), w2[b].end());
                    word.insert(word.end(), rest.begin() + j, rest.end());
                    acc[permutation_rank(word)] += x * y;
                  }
                }
                builder.add(to_row(acc));
              }
            }
          }
        }
      } while (std::next_permutation(rest.begin(), rest.end()));
    }
  }
  return {sig, builder.finish()};
}

std::string to_string(FactoringRelation r) {
  return r == FactoringRelation::equal ? "equal" : "product_strictly_inside";
}

FactoringVerdict check_factoring(const ComponentProvider& r, const std::vector<ProviderPtr>& factors,
                                 const MultidegreeSignature& sig, const ResourceGuard& guard) {
  if (factors.empty()) throw MalformedElement("check_factoring needs at least one factor");
  ProviderPtr product = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i)
    product = product_provider(product, factors[i], guard);
  const Subspace& tr = r.component(sig);
  const Subspace& tp = product->component(sig);

  FactoringVerdict v;
  v.signature = sig;
  v.dim_R = tr.dim();
  v.dim_product = tp.dim();
  switch (subspace_cmp(tp, tr)) {
    case SubspaceRelation::equal:
      v.relation = FactoringRelation::equal;
      break;
    case SubspaceRelation::a_strictly_inside_b: {
      v.relation = FactoringRelation::product_strictly_inside;
      for (const auto& b : tr.basis()) {
        if (!tp.contains(b)) {
          const auto dense = make_dense(b, tr.ambient_dim());
          v.witness = from_multilinear_coordinates(dense, sig);
          break;
        }
      }
      break;
    }
    default:
      throw InternalInconsistency("product of T-ideals is not contained in T(R) at signature " +
                                  sig_text(sig));
  }
  return v;
}

StabilizationReport stabilization_scan(const std::function<EvalTarget(int)>& family,
                                       const MultidegreeSignature& sig,
                                       const std::vector<int>& n_values,
                                       const ResourceGuard& guard) {
  StabilizationReport rep;
  for (int N : n_values) {
    if (!rep.n_values.empty() && N <= rep.n_values.back()) {
      throw MalformedElement("stabilization_scan needs increasing N values");
    }
    rep.n_values.push_back(N);
    rep.dims.push_back(identities_by_evaluation(family(N), sig, guard).dim());
  }
  const std::size_t k = rep.dims.size();
  rep.stabilized = k >= 2 && rep.dims[k - 1] == rep.dims[k - 2];
  return rep;
}

bool membership(const NcPolynomial& f, const IdentitySubspace& s) {
  const auto coords = multilinear_coordinates(f, s.signature);
  return s.space.contains(std::span<const Rational>(coords));
}

bool vanishes_modulo(const NcPolynomial& p, const ComponentProvider& provider) {
  // Group terms by their variable set.
  std::map<std::vector<VarId>, std::vector<std::pair<Word, Rational>>> parts;
  for (const auto& [w, c] : p.terms()) {
    std::vector<VarId> vars = w;
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
      throw Unsupported("quotient backend handles multilinear components only");
    }
    parts[vars].emplace_back(w, c);
  }
  for (const auto& [vars, terms] : parts) {
    if (vars.empty()) return false;  // nonzero constant
    MultidegreeSignature sig;
    for (VarId v : vars) sig.degrees.push_back(p.universe().at(v));
    std::vector<Rational> coords(factorial(vars.size()));
    for (const auto& [w, c] : terms) {
      Word relabeled;
      for (VarId id : w)
        relabeled.push_back(
            static_cast<VarId>(std::lower_bound(vars.begin(), vars.end(), id) - vars.begin()) + 1);
      coords[permutation_rank(relabeled)] += c;
    }
    if (!provider.component(sig).contains(std::span<const Rational>(coords))) return false;
  }
  return true;
}

QuotientModelResult model_eval_quotient(const NcPolynomial& f, const BlockShape& shape,
                                        const GroupSpec& group, const ComponentProvider& provider) {
  shape.validate();
  ModelConfig cfg{shape, group, GradingMode::infty()};
  const int n = shape.total();
  using Matrix = std::vector<NcPolynomial>;
  auto mul = [&](const Matrix& a, const Matrix& b) {
    Matrix out(n * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        for (int t = 0; t < n; ++t)
          if (!a[r * n + t].is_zero() && !b[t * n + c].is_zero())
            out[r * n + c] += a[r * n + t] * b[t * n + c];
    return out;
  };
  std::map<VarId, Matrix> gens;
  for (VarId id : f.occurring_variables()) {
    const GroupElement& g = f.universe().at(id);
    if (!group.conforms(g)) throw GradedEvaluationError("variable degree outside the model's group");
    Matrix m(n * n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (shape.allows(r, c))
          m[r * n + c] = NcPolynomial::variable(
              encode_entry_variable({r + 1, c + 1, static_cast<int>(id), group.index_of(g)}, cfg), g);
    gens.emplace(id, std::move(m));
  }
  QuotientModelResult res;
  res.size = n;
  res.degree_bound = f.max_length();
  res.entries.assign(n * n, NcPolynomial{});
  for (const auto& [w, c] : f.terms()) {
    Matrix term(n * n);
    for (int i = 0; i < n; ++i) term[i * n + i] = NcPolynomial::constant(1);
    for (VarId id : w) term = mul(term, gens.at(id));
    for (int i = 0; i < n * n; ++i) res.entries[i] += term[i] * c;
  }
  res.is_identity = true;
  for (const auto& e : res.entries)
    if (!vanishes_modulo(e, provider)) res.is_identity = false;
  return res;
}

}  // namespace gpi

namespace gpi {

TIdealPresentation grassmann_presentation(const GrassmannSpec& spec, bool graded) {
  if (!graded) {
    TIdealPresentation t{GroupSpec::trivial(), {}};
    t.add(parse_polynomial("[x1,x2,x3]", t.group));
    return t;
  }
  TIdealPresentation t{GroupSpec::z2(), {}};
  switch (spec.deg_kind) {
    case GrassmannDegree::natural:
      t.add(parse_polynomial("[y1,y2]", t.group));
      t.add(parse_polynomial("[y1,z2]", t.group));
      t.add(parse_polynomial("z1*z2 + z2*z1", t.group));
      break;
    case GrassmannDegree::infty:
      t.add_all_gradings(parse_polynomial("[x1,x2,x3]", GroupSpec::trivial()));
      break;
    case GrassmannDegree::k_star: {
      t.add_all_gradings(parse_polynomial("[x1,x2,x3]", GroupSpec::trivial()));
      std::string mono;
      for (int i = 1; i <= spec.k + 1; ++i) mono += (i > 1 ? "*z" : "z") + std::to_string(i);
      t.add(parse_polynomial(mono, t.group));
      break;
    }
    case GrassmannDegree::explicit_values:
      throw Unsupported("no generating set is known for an explicit grading");
  }
  return t;
}

}  // namespace gpi
