#include "gpi/algebra.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "gpi/errors.hpp"

namespace gpi {

int GrassmannSpec::generator_degree(int i) const {
  switch (deg_kind) {
    case GrassmannDegree::natural: return 1;
    case GrassmannDegree::infty: return i % 2;
    case GrassmannDegree::k_star: return i <= k ? 1 : 0;
    case GrassmannDegree::explicit_values: return explicit_degrees.at(i - 1);
  }
  return 0;
}

void GrassmannSpec::validate() const {
  if (n_generators < 0) throw MalformedElement("negative number of Grassmann generators");
  if (deg_kind == GrassmannDegree::k_star && (k < 0 || k > n_generators)) {
    throw MalformedElement("k_star grading needs 0 <= k <= N");
  }
  if (deg_kind == GrassmannDegree::explicit_values) {
    if (explicit_degrees.size() != static_cast<std::size_t>(n_generators)) {
      throw MalformedElement("explicit grading needs one degree per generator");
    }
    for (int d : explicit_degrees) {
      if (d != 0 && d != 1) throw MalformedElement("explicit degrees must be 0 or 1");
    }
  }
}

int BlockShape::total() const {
  int t = 0;
  for (int d : sizes) t += d;
  return t;
}

int BlockShape::block_of(int index) const {
  int start = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    start += sizes[b];
    if (index < start) return static_cast<int>(b);
  }
  throw MalformedElement("matrix index outside the block shape");
}

bool BlockShape::allows(int r, int s) const { return block_of(r) <= block_of(s); }

void BlockShape::validate() const {
  if (sizes.empty()) throw MalformedElement("block shape needs at least one block");
  for (int d : sizes) {
    if (d < 1) throw MalformedElement("block sizes must be positive");
  }
}

StructureConstantAlgebra::StructureConstantAlgebra(GroupSpec group,
                                                   std::vector<std::string> labels,
                                                   std::vector<GroupElement> degrees)
    : group_(std::move(group)),
      labels_(std::move(labels)),
      degrees_(std::move(degrees)),
      table_(labels_.size() * labels_.size()) {
  if (labels_.size() != degrees_.size()) {
    throw MalformedElement("labels and degrees differ in length");
  }
  for (const auto& d : degrees_) group_.check(d);
}

void StructureConstantAlgebra::set_product(std::size_t i, std::size_t j,
                                           AlgebraElement value) {
  table_.at(i * dim() + j) = std::move(value);
}

AlgebraElement basis_vector(std::size_t i) { return AlgebraElement{{i, Rational(1)}}; }

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      Rational v = a[i].second + b[j].second;
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

AlgebraElement scale(const AlgebraElement& a, const Rational& c) {
  if (c == 0) return {};
  AlgebraElement out = a;
  for (auto& [i, v] : out) v *= c;
  return out;
}

namespace {

AlgebraElement from_map(const std::map<std::size_t, Rational>& acc) {
  AlgebraElement out;
  for (const auto& [i, v] : acc) {
    if (v != 0) out.emplace_back(i, v);
  }
  return out;
}

}  // namespace

AlgebraElement StructureConstantAlgebra::multiply(const AlgebraElement& a,
                                                  const AlgebraElement& b) const {
  std::map<std::size_t, Rational> acc;
  for (const auto& [i, x] : a) {
    for (const auto& [j, y] : b) {
      const auto& p = product(i, j);
      if (p.empty()) continue;
      const Rational xy = x * y;
      for (const auto& [k, c] : p) acc[k] += xy * c;
    }
  }
  return from_map(acc);
}

AlgebraElement StructureConstantAlgebra::multiply_basis(const AlgebraElement& a,
                                                        std::size_t j) const {
  if (a.size() == 1) {
    const auto& p = product(a[0].first, j);
    return scale(p, a[0].second);
  }
  std::map<std::size_t, Rational> acc;
  for (const auto& [i, x] : a) {
    for (const auto& [k, c] : product(i, j)) acc[k] += x * c;
  }
  return from_map(acc);
}

void StructureConstantAlgebra::validate(std::size_t exhaustive_bound,
                                        std::size_t samples) const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = basis_vector(i);
    if (multiply(unit_, b) != b || multiply(b, unit_) != b) {
      throw MalformedElement("unit law fails on " + labels_[i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      const auto expected = group_.op(degrees_[i], degrees_[j]);
      for (const auto& [k, c] : product(i, j)) {
        if (degrees_[k] != expected) {
          throw MalformedElement("grading law fails on " + labels_[i] + "*" + labels_[j]);
        }
      }
    }
  }
  auto check_triple = [&](std::size_t i, std::size_t j, std::size_t k) {
    const auto left = multiply_basis(product(i, j), k);
    const auto right = multiply(basis_vector(i), product(j, k));
    if (left != right) {
      throw MalformedElement("associativity fails on (" + labels_[i] + "," + labels_[j] +
                             "," + labels_[k] + ")");
    }
  };
  if (n <= exhaustive_bound) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) check_triple(i, j, k);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t s = 0; s < samples; ++s) {
      const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
      check_triple(i, j, k);
    }
  }
}

StructureConstantAlgebra build_matrix_algebra(int n, const GradingMap& g,
                                              const GroupSpec& spec) {
  return build_block_triangular_elementary(BlockShape{{n}}, g, spec);
}

StructureConstantAlgebra build_block_triangular_elementary(const BlockShape& shape,
                                                           const GradingMap& g,
                                                           const GroupSpec& spec) {
  shape.validate();
  const int n = shape.total();
  if (g.targets.size() != static_cast<std::size_t>(n)) {
    throw MalformedElement("grading map length differs from matrix size");
  }
  for (const auto& t : g.targets) spec.check(t);
  std::vector<std::pair<int, int>> positions;
  std::vector<std::string> labels;
  std::vector<GroupElement> degrees;
  std::map<std::pair<int, int>, std::size_t> index;
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      if (!shape.allows(r, s)) continue;
      index[{r, s}] = positions.size();
      positions.emplace_back(r, s);
      labels.push_back("e(" + std::to_string(r + 1) + "," + std::to_string(s + 1) + ")");
      degrees.push_back(spec.op(g.targets[s], spec.inverse(g.targets[r])));
    }
  }
  StructureConstantAlgebra a(spec, labels, degrees);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = 0; j < positions.size(); ++j) {
      if (positions[i].second != positions[j].first) continue;
      a.set_product(i, j, basis_vector(index.at({positions[i].first, positions[j].second})));
    }
  }
  AlgebraElement unit;
  for (int r = 0; r < n; ++r) unit.emplace_back(index.at({r, r}), Rational(1));
  std::sort(unit.begin(), unit.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  a.set_unit(unit);
  std::string sizes;
  for (std::size_t b = 0; b < shape.sizes.size(); ++b) {
    sizes += (b ? "," : "") + std::to_string(shape.sizes[b]);
  }
  a.description = shape.sizes.size() == 1 ? "M_" + sizes + "(F), elementary"
                                          : "UT(" + sizes + ";F), elementary";
  return a;
}

StructureConstantAlgebra build_grassmann(const GrassmannSpec& spec) {
  spec.validate();
  const int n = spec.n_generators;
  if (n > 12) throw GuardExceeded("Grassmann table too large to tabulate", std::size_t(1) << n);
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < (1u << n); ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    // Lexicographic on the sorted index sequence.
    for (int i = 0; i < 32; ++i) {
      const bool ba = a >> i & 1u, bb = b >> i & 1u;
      if (ba != bb) return ba;
    }
    return false;
  });
  std::vector<std::size_t> position(masks.size());
  std::vector<std::string> labels;
  std::vector<GroupElement> degrees;
  const GroupSpec z2 = GroupSpec::z2();
  for (std::size_t i = 0; i < masks.size(); ++i) {
    position[masks[i]] = i;
    std::string label;
    int degree = 0;
    for (int g = 0; g < n; ++g) {
      if (masks[i] >> g & 1u) {
        label += "e" + std::to_string(g + 1);
        degree ^= spec.generator_degree(g + 1);
      }
    }
    labels.push_back(label.empty() ? "1" : label);
    degrees.push_back(z2.make({degree}));
  }
  StructureConstantAlgebra a(z2, labels, degrees);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = 0; j < masks.size(); ++j) {
      const std::uint32_t s = masks[i], t = masks[j];
      if (s & t) continue;
      // Inversions of the concatenated index sequence: pairs (p in s, q in t)
      // with p > q.
      int inversions = 0;
      for (int q = 0; q < n; ++q) {
        if (t >> q & 1u) inversions += std::popcount(s >> (q + 1));
      }
      a.set_product(i, j, AlgebraElement{{position[s | t], Rational(inversions % 2 ? -1 : 1)}});
    }
  }
  a.set_unit(basis_vector(0));
  std::string kind;
  switch (spec.deg_kind) {
    case GrassmannDegree::natural: kind = "natural"; break;
    case GrassmannDegree::infty: kind = "infty"; break;
    case GrassmannDegree::k_star: kind = "kstar(" + std::to_string(spec.k) + ")"; break;
    case GrassmannDegree::explicit_values: kind = "explicit"; break;
  }
  a.description = "E_" + std::to_string(n) + ", " + kind;
  return a;
}

StructureConstantAlgebra build_matrix_over(const StructureConstantAlgebra& inner,
                                           const BlockShape& shape) {
  shape.validate();
  const int n = shape.total();
  std::vector<std::pair<int, int>> positions;
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      if (shape.allows(r, s)) positions.emplace_back(r, s);
  const std::size_t d = inner.dim();
  std::map<std::pair<int, int>, std::size_t> pos_index;
  for (std::size_t p = 0; p < positions.size(); ++p) pos_index[positions[p]] = p;
  std::vector<std::string> labels;
  std::vector<GroupElement> degrees;
  for (const auto& [r, s] : positions) {
    for (std::size_t b = 0; b < d; ++b) {
      labels.push_back("e(" + std::to_string(r + 1) + "," + std::to_string(s + 1) + ")|" +
                       inner.labels()[b]);
      degrees.push_back(inner.degree_of(b));
    }
  }
  StructureConstantAlgebra a(inner.group(), labels, degrees);
  for (std::size_t p = 0; p < positions.size(); ++p) {
    for (std::size_t q = 0; q < positions.size(); ++q) {
      if (positions[p].second != positions[q].first) continue;
      const std::size_t target = pos_index.at({positions[p].first, positions[q].second});
      for (std::size_t b = 0; b < d; ++b) {
        for (std::size_t c = 0; c < d; ++c) {
          AlgebraElement prod;
          for (const auto& [k, v] : inner.product(b, c)) prod.emplace_back(target * d + k, v);
          if (!prod.empty()) a.set_product(p * d + b, q * d + c, std::move(prod));
        }
      }
    }
  }
  AlgebraElement unit;
  for (int r = 0; r < n; ++r) {
    for (const auto& [k, v] : inner.unit()) unit.emplace_back(pos_index.at({r, r}) * d + k, v);
  }
  std::sort(unit.begin(), unit.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  a.set_unit(unit);
  std::string sizes;
  for (std::size_t b = 0; b < shape.sizes.size(); ++b) {
    sizes += (b ? "," : "") + std::to_string(shape.sizes[b]);
  }
  a.description = "UT(" + sizes + ";" + inner.description + ")";
  return a;
}

RegularityReport is_g_regular(const GradingMap& g, const GroupSpec& spec) {
  RegularityReport report;
  report.fiber_sizes.assign(spec.order(), 0);
  for (const auto& t : g.targets) ++report.fiber_sizes[spec.index_of(t)];
  report.surjective = std::all_of(report.fiber_sizes.begin(), report.fiber_sizes.end(),
                                  [](std::size_t s) { return s > 0; });
  report.regular = report.surjective &&
                   std::adjacent_find(report.fiber_sizes.begin(), report.fiber_sizes.end(),
                                      std::not_equal_to<>()) == report.fiber_sizes.end();
  return report;
}

std::vector<AlgebraElement> homogeneous_basis(const StructureConstantAlgebra& a,
                                              const GroupElement& g) {
  std::vector<AlgebraElement> out;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.degree_of(i) == g) out.push_back(basis_vector(i));
  }
  return out;
}

std::vector<GroupElement> support(const StructureConstantAlgebra& a) {
  std::vector<GroupElement> out;
  for (const auto& g : a.group().elements()) {
    if (!homogeneous_basis(a, g).empty()) out.push_back(g);
  }
  return out;
}

AlgebraElement evaluate(const NcPolynomial& f,
                        const std::map<VarId, AlgebraElement>& assignment,
                        const StructureConstantAlgebra& a) {
  for (VarId id : f.occurring_variables()) {
    auto it = assignment.find(id);
    if (it == assignment.end()) {
      throw GradedEvaluationError("no value assigned to x" + std::to_string(id));
    }
    const auto& expected = f.universe().at(id);
    for (const auto& [k, v] : it->second) {
      if (a.degree_of(k) != expected) {
        throw GradedEvaluationError("value of x" + std::to_string(id) +
                                    " is not homogeneous of degree " + to_string(expected));
      }
    }
  }
  AlgebraElement result;
  for (const auto& [w, c] : f.terms()) {
    AlgebraElement term = scale(a.unit(), c);
    for (VarId id : w) {
      term = a.multiply(term, assignment.at(id));
      if (term.empty()) break;
    }
    result = add(result, term);
  }
  return result;
}

}  // namespace gpi

namespace gpi {

StructureConstantAlgebra with_trivial_grading(const StructureConstantAlgebra& a) {
  const GroupSpec trivial = GroupSpec::trivial();
  StructureConstantAlgebra out(trivial, a.labels(),
                               std::vector<GroupElement>(a.dim(), trivial.identity()));
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out.set_product(i, j, a.product(i, j));
  out.set_unit(a.unit());
  out.description = a.description + ", ungraded";
  return out;
}

}  // namespace gpi
