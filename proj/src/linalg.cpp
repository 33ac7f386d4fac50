#include "gpi/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "gpi/errors.hpp"

namespace gpi {

SparseRow make_sparse(std::span<const Rational> dense) {
  SparseRow row;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) row.emplace_back(i, dense[i]);
  }
  return row;
}

std::vector<Rational> make_dense(const SparseRow& row, std::size_t n) {
  std::vector<Rational> dense(n);
  for (const auto& [c, v] : row) dense.at(c) = v;
  return dense;
}

SparseMatrix::SparseMatrix(std::size_t n_rows, std::size_t n_cols)
    : n_cols_(n_cols), rows_(n_rows) {}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& rows,
                                      std::size_t n_cols) {
  SparseMatrix m(n_cols);
  for (const auto& r : rows) {
    if (r.size() != n_cols) throw AmbientMismatch("ragged dense matrix");
    m.append_row(make_sparse(r));
  }
  return m;
}

void SparseMatrix::append_row(SparseRow row) {
  std::sort(row.begin(), row.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow clean;
  for (auto& [c, v] : row) {
    if (c >= n_cols_) throw AmbientMismatch("column index out of range");
    v.canonicalize();
    if (!clean.empty() && clean.back().first == c) {
      clean.back().second += v;
      if (clean.back().second == 0) clean.pop_back();
    } else if (v != 0) {
      clean.emplace_back(c, std::move(v));
    }
  }
  rows_.push_back(std::move(clean));
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_.size() || c >= n_cols_) throw AmbientMismatch("index out of range");
  auto& row = rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    if (value == 0) {
      row.erase(it);
    } else {
      it->second = value;
      it->second.canonicalize();
    }
  } else if (value != 0) {
    it = row.insert(it, {c, value});
    it->second.canonicalize();
  }
}

Rational SparseMatrix::at(std::size_t r, std::size_t c) const {
  const auto& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  return (it != row.end() && it->first == c) ? it->second : Rational(0);
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

std::vector<Rational> SparseMatrix::apply(std::span<const Rational> v) const {
  if (v.size() != n_cols_) throw AmbientMismatch("vector length mismatch");
  std::vector<Rational> out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (const auto& [c, x] : rows_[i]) out[i] += x * v[c];
  }
  return out;
}

std::string to_triplets(const SparseMatrix& m) {
  std::ostringstream os;
  os << m.n_rows() << " " << m.n_cols() << " " << m.nnz() << "\n";
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    for (const auto& [c, v] : m.row(r)) os << r << " " << c << " " << to_string(v) << "\n";
  }
  return os.str();
}

SparseMatrix from_triplets(const std::string& text) {
  std::istringstream is(text);
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(is >> rows >> cols >> nnz)) throw ParseError("bad triplet header");
  SparseMatrix m(rows, cols);
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t r = 0, c = 0;
    std::string value;
    if (!(is >> r >> c >> value)) throw ParseError("truncated triplet data");
    if (r >= rows || c >= cols) throw ParseError("triplet index out of range");
    m.set(r, c, m.at(r, c) + parse_rational(value));
  }
  std::string extra;
  if (is >> extra) throw ParseError("trailing data after triplets");
  return m;
}

// ---------------------------------------------------------------------------

namespace {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

void make_primitive(IntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (row.front().second < 0) g = -g;
  if (g != 1) {
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

// a*x - b*y
IntRow combine(const Integer& a, const IntRow& x, const Integer& b, const IntRow& y) {
  IntRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  Integer t;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      t = a * x[i].second - b * y[j].second;
      if (t != 0) out.emplace_back(x[i].first, t);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

RowSpaceBuilder::RowSpaceBuilder(std::size_t n_cols, ResourceGuard guard)
    : n_cols_(n_cols), guard_(guard) {}

void RowSpaceBuilder::check_bits(const IntRow& row) const {
  for (const auto& [c, v] : row) {
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > guard_.max_bits) {
      throw GuardExceeded("coefficient bit-length exceeds guard", row.size());
    }
  }
}

bool RowSpaceBuilder::add(const SparseRow& row) {
  if (row.empty()) return false;
  Integer lcm = 1;
  for (const auto& [c, v] : row) {
    if (c >= n_cols_) throw AmbientMismatch("column index out of range");
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
  }
  IntRow current;
  current.reserve(row.size());
  for (const auto& [c, v] : row) {
    if (v == 0) continue;
    current.emplace_back(c, Integer(v.get_num() * (lcm / v.get_den())));
  }
  make_primitive(current);
  while (!current.empty()) {
    auto it = echelon_.find(current.front().first);
    if (it == echelon_.end()) {
      check_bits(current);
      echelon_.emplace(current.front().first, std::move(current));
      return true;
    }
    const IntRow& pivot = it->second;
    const Integer a = pivot.front().second;
    const Integer b = current.front().second;
    current = combine(a, current, b, pivot);
    make_primitive(current);
    check_bits(current);
  }
  return false;
}

bool RowSpaceBuilder::add_dense(std::span<const Rational> row) {
  if (row.size() != n_cols_) throw AmbientMismatch("row length mismatch");
  return add(make_sparse(row));
}

Subspace RowSpaceBuilder::finish() const {
  Subspace s(n_cols_);
  std::vector<SparseRow> rows;
  rows.reserve(echelon_.size());
  for (const auto& [lead, row] : echelon_) {
    SparseRow r;
    r.reserve(row.size());
    const Integer& head = row.front().second;
    for (const auto& [c, v] : row) {
      Rational q(v, head);
      q.canonicalize();
      r.emplace_back(c, q);
    }
    rows.push_back(std::move(r));
    s.pivots_.push_back(lead);
  }
  // Back substitution, bottom-up, so every row used for elimination is
  // already reduced.
  for (std::size_t i = rows.size(); i-- > 0;) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const std::size_t p = s.pivots_[j];
      auto& r = rows[i];
      auto it = std::lower_bound(r.begin(), r.end(), p,
                                 [](const auto& e, std::size_t col) { return e.first < col; });
      if (it == r.end() || it->first != p) continue;
      const Rational factor = it->second;
      SparseRow merged;
      merged.reserve(r.size() + rows[j].size());
      std::size_t a = 0, b = 0;
      const auto& y = rows[j];
      while (a < r.size() || b < y.size()) {
        if (b == y.size() || (a < r.size() && r[a].first < y[b].first)) {
          merged.push_back(r[a++]);
        } else if (a == r.size() || y[b].first < r[a].first) {
          merged.emplace_back(y[b].first, -factor * y[b].second);
          ++b;
        } else {
          Rational v = r[a].second - factor * y[b].second;
          if (v != 0) merged.emplace_back(r[a].first, v);
          ++a;
          ++b;
        }
      }
      r = std::move(merged);
    }
  }
  s.basis_ = std::move(rows);
  return s;
}

// ---------------------------------------------------------------------------

bool Subspace::contains(const SparseRow& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(std::span<const Rational> v) const {
  if (v.size() != ambient_dim_) throw AmbientMismatch("vector length mismatch");
  return contains(make_sparse(v));
}

std::optional<std::vector<Rational>> Subspace::coordinates(const SparseRow& v) const {
  std::map<std::size_t, Rational> residual;
  for (const auto& [c, x] : v) {
    if (c >= ambient_dim_) throw AmbientMismatch("vector index out of range");
    if (x != 0) residual[c] += x;
  }
  std::vector<Rational> coeffs(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    auto it = residual.find(pivots_[i]);
    if (it == residual.end() || it->second == 0) continue;
    const Rational factor = it->second;
    coeffs[i] = factor;
    for (const auto& [c, x] : basis_[i]) {
      Rational& slot = residual[c];
      slot -= factor * x;
      if (slot == 0) residual.erase(c);
    }
  }
  for (const auto& [c, x] : residual) {
    if (x != 0) return std::nullopt;
  }
  return coeffs;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    s.basis_.push_back(SparseRow{{i, Rational(1)}});
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace span_of(const std::vector<SparseRow>& rows, std::size_t ambient_dim,
                 const ResourceGuard& guard) {
  if (rows.size() * std::max<std::size_t>(ambient_dim, 1) > guard.max_cells) {
    throw GuardExceeded("matrix of " + std::to_string(rows.size()) + " rows exceeds guard",
                        rows.size());
  }
  RowSpaceBuilder builder(ambient_dim, guard);
  for (const auto& r : rows) {
    builder.add(r);
    if (builder.is_full()) break;
  }
  return builder.finish();
}

Subspace rref(const SparseMatrix& m, const ResourceGuard& guard) {
  return span_of(m.rows(), m.n_cols(), guard);
}

Subspace kernel_of(const Subspace& rows) {
  const std::size_t n = rows.ambient_dim();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : rows.pivots()) is_pivot[p] = true;
  std::vector<SparseRow> vectors;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    SparseRow v;
    for (std::size_t i = 0; i < rows.dim(); ++i) {
      const auto& r = rows.basis()[i];
      auto it = std::lower_bound(r.begin(), r.end(), f,
                                 [](const auto& e, std::size_t col) { return e.first < col; });
      if (it != r.end() && it->first == f) v.emplace_back(rows.pivots()[i], -it->second);
    }
    v.emplace_back(f, Rational(1));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    vectors.push_back(std::move(v));
  }
  return span_of(vectors, n);
}

Subspace kernel_basis(const SparseMatrix& m, const ResourceGuard& guard) {
  return kernel_of(rref(m, guard));
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw AmbientMismatch("ambient dimensions differ");
  std::vector<SparseRow> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return span_of(rows, a.ambient_dim());
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw AmbientMismatch("ambient dimensions differ");
  return kernel_of(subspace_sum(kernel_of(a), kernel_of(b)));
}

SubspaceRelation subspace_cmp(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw AmbientMismatch("ambient dimensions differ");
  const std::size_t sum = subspace_sum(a, b).dim();
  if (sum == a.dim() && sum == b.dim()) return SubspaceRelation::equal;
  if (sum == b.dim()) return SubspaceRelation::a_strictly_inside_b;
  if (sum == a.dim()) return SubspaceRelation::b_strictly_inside_a;
  return SubspaceRelation::incomparable;
}

std::string to_string(SubspaceRelation r) {
  switch (r) {
    case SubspaceRelation::equal: return "equal";
    case SubspaceRelation::a_strictly_inside_b: return "a_strictly_inside_b";
    case SubspaceRelation::b_strictly_inside_a: return "b_strictly_inside_a";
    case SubspaceRelation::incomparable: return "incomparable";
  }
  return "?";
}

}  // namespace gpi
