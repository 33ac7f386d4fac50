#include "gpi/generic_model.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gpi/errors.hpp"
#include "gpi/linalg.hpp"

namespace gpi {

void ModelConfig::validate() const {
  shape.validate();
  if (!group.is_trivial() && group.cyclic_orders() != std::vector<int>{2}) {
    throw MalformedElement("the relatively free backend is Z2-graded; group must be Z2 or trivial");
  }
}

VarId encode_entry_variable(const EntryVariable& v, const ModelConfig& cfg) {
  const VarId n = static_cast<VarId>(cfg.shape.total());
  const VarId order = cfg.group.order();
  if (v.row < 1 || v.col < 1 || VarId(v.row) > n || VarId(v.col) > n || v.k < 1 ||
      v.group_index >= order) {
    throw MalformedElement("entry variable out of range");
  }
  return 1 + (((VarId(v.k) - 1) * order + v.group_index) * n + VarId(v.row - 1)) * n +
         VarId(v.col - 1);
}

EntryVariable decode_entry_variable(VarId id, const ModelConfig& cfg) {
  if (id == 0) throw MalformedElement("entry variable ids start at 1");
  const VarId n = static_cast<VarId>(cfg.shape.total());
  const VarId order = cfg.group.order();
  VarId rest = id - 1;
  EntryVariable v;
  v.col = static_cast<int>(rest % n) + 1;
  rest /= n;
  v.row = static_cast<int>(rest % n) + 1;
  rest /= n;
  v.group_index = static_cast<std::size_t>(rest % order);
  rest /= order;
  v.k = static_cast<int>(rest) + 1;
  return v;
}

GenericMatrix::GenericMatrix(BlockShape shape, GradingMode mode)
    : shape_(std::move(shape)), mode_(mode), n_(shape_.total()) {
  shape_.validate();
  entries_.assign(static_cast<std::size_t>(n_) * n_, RelFreeElement(mode_));
}

GenericMatrix GenericMatrix::identity(BlockShape shape, GradingMode mode) {
  GenericMatrix m(std::move(shape), mode);
  for (int i = 0; i < m.n_; ++i) m.set(i, i, RelFreeElement::constant(mode, 1));
  return m;
}

void GenericMatrix::set(int r, int c, RelFreeElement value) {
  if (r < 0 || c < 0 || r >= n_ || c >= n_) throw MalformedElement("matrix index out of range");
  if (!(value.mode() == mode_)) throw ModeMismatch("entry mode differs from matrix mode");
  if (!shape_.allows(r, c) && !value.is_zero()) {
    throw MalformedElement("nonzero entry below the diagonal blocks");
  }
  entries_[r * n_ + c] = std::move(value);
}

bool GenericMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

void GenericMatrix::check_compatible(const GenericMatrix& o) const {
  if (!(shape_ == o.shape_) || !(mode_ == o.mode_)) {
    throw ModeMismatch("generic matrices from different models");
  }
}

GenericMatrix& GenericMatrix::operator+=(const GenericMatrix& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

GenericMatrix& GenericMatrix::operator-=(const GenericMatrix& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

GenericMatrix& GenericMatrix::operator*=(const Rational& c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

GenericMatrix operator*(const GenericMatrix& a, const GenericMatrix& b) {
  a.check_compatible(b);
  GenericMatrix out(a.shape_, a.mode_);
  const int n = a.n_;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (!a.shape_.allows(r, c)) continue;
      RelFreeElement acc(a.mode_);
      for (int t = 0; t < n; ++t) {
        const auto& x = a.at(r, t);
        const auto& y = b.at(t, c);
        if (x.is_zero() || y.is_zero()) continue;
        acc += relfree_mul(x, y);
      }
      out.entries_[r * n + c] = std::move(acc);
    }
  }
  return out;
}

GenericMatrix make_generator(int k, const GroupElement& g, const ModelConfig& cfg) {
  cfg.validate();
  if (k < 1) throw MalformedElement("generator index k must be >= 1");
  const std::size_t gi = cfg.group.index_of(g);
  const bool odd = !cfg.group.is_trivial() && g.residues[0] == 1;
  GenericMatrix m(cfg.shape, cfg.backend);
  const int n = cfg.shape.total();
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (!cfg.shape.allows(r, c)) continue;
      const VarId id = encode_entry_variable({r + 1, c + 1, k, gi}, cfg);
      m.set(r, c, RelFreeElement::letter(cfg.backend, Letter{id, odd}));
    }
  }
  return m;
}

GenericMatrix model_eval(const NcPolynomial& f, const ModelConfig& cfg) {
  cfg.validate();
  std::map<VarId, GenericMatrix> generators;
  for (VarId id : f.occurring_variables()) {
    const GroupElement& g = f.universe().at(id);
    if (!cfg.group.conforms(g)) {
      throw GradedEvaluationError("degree of x" + std::to_string(id) + " is not in the model's group");
    }
    generators.emplace(id, make_generator(static_cast<int>(id), g, cfg));
  }
  GenericMatrix result(cfg.shape, cfg.backend);
  for (const auto& [w, c] : f.terms()) {
    GenericMatrix term = GenericMatrix::identity(cfg.shape, cfg.backend);
    for (VarId id : w) {
      term = term * generators.at(id);
      if (term.is_zero()) break;
    }
    result += term * c;
  }
  return result;
}

GenericMatrix shift_automorphism(const GenericMatrix& m, const ModelConfig& cfg) {
  if (cfg.shape.sizes.size() != 1) {
    throw UnsupportedShape("the shift automorphism is defined on single-block models only");
  }
  if (!(m.shape() == cfg.shape)) throw ModeMismatch("matrix does not belong to this model");
  const int n = cfg.shape.total();
  std::map<VarId, VarId> renaming;
  auto collect = [&](const Letter& l) {
    if (renaming.contains(l.id)) return;
    EntryVariable v = decode_entry_variable(l.id, cfg);
    v.row = v.row % n + 1;
    v.col = v.col % n + 1;
    renaming.emplace(l.id, encode_entry_variable(v, cfg));
  };
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      for (const auto& [w, coeff] : m.at(r, c).terms()) {
        for (const auto& l : w.letters) collect(l);
        for (const auto& l : w.commutators) collect(l);
      }
    }
  }
  GenericMatrix out(m.shape(), m.mode());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out.set(r, c, rename_variables(m.at(r, c), renaming));
  return out;
}

std::vector<RelFreeElement> column_projection(const GenericMatrix& m, int k) {
  if (k < 1 || k > m.size()) throw MalformedElement("column index out of range");
  std::vector<RelFreeElement> col;
  for (int r = 0; r < m.size(); ++r) col.push_back(m.at(r, k - 1));
  return col;
}

namespace {

// Rank of vectors whose coordinates are (slot, basis word) pairs.
bool vectors_independent(const std::vector<std::vector<RelFreeElement>>& vectors) {
  std::map<std::pair<std::size_t, RelFreeWord>, std::size_t> column;
  for (const auto& v : vectors)
    for (std::size_t s = 0; s < v.size(); ++s)
      for (const auto& [w, c] : v[s].terms()) column.emplace(std::make_pair(s, w), 0);
  std::size_t next = 0;
  for (auto& [key, idx] : column) idx = next++;
  RowSpaceBuilder builder(column.size());
  for (const auto& v : vectors) {
    SparseRow row;
    for (std::size_t s = 0; s < v.size(); ++s)
      for (const auto& [w, c] : v[s].terms()) row.emplace_back(column.at({s, w}), c);
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!builder.add(row)) return false;
  }
  return true;
}

void check_same_model(std::span<const GenericMatrix> set) {
  for (const auto& m : set) {
    if (!(m.shape() == set.front().shape()) || !(m.mode() == set.front().mode())) {
      throw ModeMismatch("matrices come from different models");
    }
  }
}

}  // namespace

bool independent_by_columns(std::span<const GenericMatrix> set, int k) {
  if (set.empty()) return true;
  check_same_model(set);
  if (set.front().shape().sizes.size() != 1) {
    throw UnsupportedShape("column independence is defined on single-block models only");
  }
  std::vector<std::vector<RelFreeElement>> vectors;
  for (const auto& m : set) vectors.push_back(column_projection(m, k));
  return vectors_independent(vectors);
}

bool independent_full(std::span<const GenericMatrix> set) {
  if (set.empty()) return true;
  check_same_model(set);
  std::vector<std::vector<RelFreeElement>> vectors;
  for (const auto& m : set) {
    std::vector<RelFreeElement> flat;
    for (int r = 0; r < m.size(); ++r)
      for (int c = 0; c < m.size(); ++c) flat.push_back(m.at(r, c));
    vectors.push_back(std::move(flat));
  }
  return vectors_independent(vectors);
}

BlockViews extract_blocks(const GenericMatrix& m, const ModelConfig& cfg) {
  if (cfg.shape.sizes.size() < 2) throw UnsupportedShape("block extraction needs at least two blocks");
  if (!(m.shape() == cfg.shape)) throw ModeMismatch("matrix does not belong to this model");
  BlockShape leading_shape{{cfg.shape.sizes.begin(), cfg.shape.sizes.end() - 1}};
  const int d = leading_shape.total();
  const int dm = cfg.shape.sizes.back();
  BlockViews views{GenericMatrix(leading_shape, m.mode()), GenericMatrix(BlockShape{{dm}}, m.mode()),
                   {}, d, dm};
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) views.leading.set(r, c, m.at(r, c));
  for (int r = 0; r < dm; ++r)
    for (int c = 0; c < dm; ++c) views.corner.set(r, c, m.at(d + r, d + c));
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < dm; ++c) views.strip.push_back(m.at(r, d + c));
  return views;
}

GenericMatrix reassemble(const BlockViews& views, const ModelConfig& cfg) {
  GenericMatrix m(cfg.shape, views.leading.mode());
  const int d = views.strip_rows, dm = views.strip_cols;
  if (d + dm != cfg.shape.total()) throw MalformedElement("block views do not match the model");
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m.set(r, c, views.leading.at(r, c));
  for (int r = 0; r < dm; ++r)
    for (int c = 0; c < dm; ++c) m.set(d + r, d + c, views.corner.at(r, c));
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < dm; ++c) m.set(r, d + c, views.strip[r * dm + c]);
  return m;
}

std::string print_matrix(const GenericMatrix& m) {
  std::string out;
  for (int r = 0; r < m.size(); ++r) {
    for (int c = 0; c < m.size(); ++c) {
      if (c) out += " | ";
      out += print_relfree(m.at(r, c));
    }
    out += "\n";
  }
  return out;
}

}  // namespace gpi
