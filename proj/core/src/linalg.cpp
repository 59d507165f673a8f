#include "mrb/linalg.hpp"

#include <algorithm>
#include <cctype>

#include "mrb/errors.hpp"

namespace mrb {

Scalar parse_scalar(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') ++i;
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    ++i;
    ++digits;
  }
  if (digits == 0) throw InputError("malformed rational '" + std::string(text) + "'");
  if (i < text.size()) {
    if (text[i] != '/' || i + 1 >= text.size() || text[i + 1] == '0')
      throw InputError("malformed rational '" + std::string(text) + "'");
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i != text.size()) throw InputError("malformed rational '" + std::string(text) + "'");
  }
  Scalar s(std::string(text), 10);
  s.canonicalize();
  return s;
}

std::string to_string(const Scalar& s) { return s.get_str(); }

std::size_t bit_size(const Scalar& s) {
  return mpz_sizeinbase(s.get_num_mpz_t(), 2) + mpz_sizeinbase(s.get_den_mpz_t(), 2);
}

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

Vector operator+(const Vector& a, const Vector& b) {
  Vector out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  Vector out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

Vector operator*(const Scalar& c, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

Vector& axpy(Vector& y, const Scalar& a, const Vector& x) {
  if (sgn(a) == 0) return y;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) y[i] += a * x[i];
  return y;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  }
  return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw InputError("matrix entry count does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw InputError("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const { return mrb::is_zero(data_); }

Vector Matrix::operator*(const Vector& v) const {
  if (v.size() != cols_) throw InputError("matrix-vector shape mismatch");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Scalar acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (sgn(a) != 0 && sgn(v[c]) != 0) acc += a * v[c];
    }
    out[r] = acc;
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw InputError("matrix product shape mismatch");
  Matrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(r, k);
      if (sgn(a) == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) {
        const Scalar& b = other(k, c);
        if (sgn(b) != 0) out(r, c) += a * b;
      }
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& other) const {
  Matrix out(*this);
  out += other;
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
  Matrix out(*this);
  out -= other;
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix sum shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InputError("matrix sum shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix operator*(const Scalar& c, const Matrix& m) {
  Matrix out(m);
  for (auto& x : out.data_) x *= c;
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& x = a(i, j);
      if (sgn(x) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return out;
}

Matrix block_diagonal(std::span<const Matrix> blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out(r0 + r, c0 + c) = b(r, c);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

Matrix vstack(std::span<const Matrix> parts, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw InputError("vstack column mismatch");
    rows += p.rows();
  }
  Matrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    for (std::size_t r = 0; r < p.rows(); ++r)
      for (std::size_t c = 0; c < cols; ++c) out(r0 + r, c) = p(r, c);
    r0 += p.rows();
  }
  return out;
}

Echelon row_reduce(const Matrix& m) {
  std::vector<Vector> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Vector row = m.row(r);
    if (!is_zero(row)) rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
    std::size_t best = rows.size();
    std::size_t best_size = 0;
    for (std::size_t r = next; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      std::size_t size = bit_size(rows[r][c]);
      if (best == rows.size() || size < best_size) {
        best = r;
        best_size = size;
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[next], rows[best]);
    Vector& p = rows[next];
    Scalar inv = 1 / p[c];
    for (std::size_t k = c; k < p.size(); ++k)
      if (sgn(p[k]) != 0) p[k] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next || sgn(rows[r][c]) == 0) continue;
      Scalar f = rows[r][c];
      for (std::size_t k = c; k < p.size(); ++k)
        if (sgn(p[k]) != 0) rows[r][k] -= f * p[k];
    }
    pivots.push_back(c);
    ++next;
  }
  rows.resize(next);
  return {Matrix::from_rows(rows, m.cols()), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  Subspace s(ambient_dim);
  if (vectors.empty()) return s;
  Echelon e = row_reduce(Matrix::from_rows(vectors, ambient_dim));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) s.basis_.push_back(e.reduced.row(r));
  s.pivots_ = std::move(e.pivots);
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < ambient_dim; ++i) basis.push_back(unit_vector(ambient_dim, i));
  return span(ambient_dim, basis);
}

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
  if (v.size() != ambient_dim_) throw InputError("vector length does not match subspace ambient");
  Vector coords(basis_.size());
  Vector rest(v);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    coords[i] = v[pivots_[i]];
    axpy(rest, -coords[i], basis_[i]);
  }
  if (!is_zero(rest)) return std::nullopt;
  return coords;
}

bool Subspace::contains(const Vector& v) const { return coordinates(v).has_value(); }

Vector Subspace::combine(const Vector& coords) const {
  Vector out(ambient_dim_);
  for (std::size_t i = 0; i < basis_.size(); ++i) axpy(out, coords[i], basis_[i]);
  return out;
}

bool Subspace::operator==(const Subspace& other) const {
  return ambient_dim_ == other.ambient_dim_ && basis_ == other.basis_;
}

Subspace Subspace::operator+(const Subspace& other) const {
  std::vector<Vector> all(basis_);
  all.insert(all.end(), other.basis_.begin(), other.basis_.end());
  return span(ambient_dim_, all);
}

Subspace nullspace_basis(const Matrix& m) {
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), basis);
}

std::optional<LinearSolution> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw InputError("right-hand side length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  Echelon e = row_reduce(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return LinearSolution{std::move(x), nullspace_basis(m)};
}

Matrix QuotientSpace::section() const {
  Matrix s(ambient_dim, dim);
  for (std::size_t i = 0; i < dim; ++i) s(complement[i], i) = 1;
  return s;
}

QuotientSpace quotient_space(std::size_t ambient_dim, const std::vector<Vector>& relations) {
  for (const auto& r : relations)
    if (r.size() != ambient_dim) throw InputError("relation length does not match ambient dimension");

  // Echelon with columns reversed: each row is led by its largest index, so
  // the non-pivot indices are exactly the greedy lexicographic complement.
  std::vector<Vector> reversed;
  reversed.reserve(relations.size());
  for (const auto& r : relations) reversed.emplace_back(r.rbegin(), r.rend());
  Echelon e = row_reduce(reversed.empty() ? Matrix(0, ambient_dim)
                                           : Matrix::from_rows(reversed, ambient_dim));

  std::vector<long> pivot_row(ambient_dim, -1);
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    pivot_row[ambient_dim - 1 - e.pivots[r]] = static_cast<long>(r);

  QuotientSpace q;
  q.ambient_dim = ambient_dim;
  std::vector<long> position(ambient_dim, -1);
  for (std::size_t j = 0; j < ambient_dim; ++j)
    if (pivot_row[j] < 0) {
      position[j] = static_cast<long>(q.complement.size());
      q.complement.push_back(j);
    }
  q.dim = q.complement.size();
  q.project = Matrix(q.dim, ambient_dim);
  for (std::size_t j = 0; j < ambient_dim; ++j) {
    if (pivot_row[j] < 0) {
      q.project(static_cast<std::size_t>(position[j]), j) = 1;
      continue;
    }
    // e_j is congruent to e_j minus its reduced relation row, which lives on
    // complement indices only.
    auto r = static_cast<std::size_t>(pivot_row[j]);
    for (std::size_t c = 0; c < q.dim; ++c) {
      std::size_t idx = q.complement[c];
      const Scalar& x = e.reduced(r, ambient_dim - 1 - idx);
      if (sgn(x) != 0) q.project(c, j) = -x;
    }
  }
  q.relations = Subspace::span(ambient_dim, relations);
  return q;
}

}  // namespace mrb

namespace mrb {

namespace {

// a + f * b over sparse vectors.
SparseVector sparse_axpy(const SparseVector& a, const Scalar& f, const SparseVector& b) {
  SparseVector out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, f * b[j].second);
      ++j;
    } else {
      Scalar s = a[i].second + f * b[j].second;
      if (sgn(s) != 0) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

SparseVector to_sparse(const Vector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out.emplace_back(i, v[i]);
  return out;
}

SparseVector SparseEchelon::reduce(SparseVector v) const {
  while (!v.empty()) {
    const auto& [lead, coeff] = v.back();
    if (lead >= ambient_dim_) throw InputError("sparse vector index out of range");
    const SparseVector& row = rows_[lead];
    if (row.empty()) break;
    Scalar f = -coeff;
    v = sparse_axpy(v, f, row);
  }
  return v;
}

bool SparseEchelon::insert(SparseVector v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Scalar inv = 1 / v.back().second;
  for (auto& [idx, x] : v) x *= inv;
  std::size_t lead = v.back().first;
  rows_[lead] = std::move(v);
  ++rank_;
  return true;
}

}  // namespace mrb
