#pragma once

// Exact rational linear algebra over Q.
//
// Every routine in this header is exact: there is no tolerance parameter
// anywhere. Scalars are GMP rationals kept in canonical form (reduced, with a
// positive denominator).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mrb {

using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Parses `-?[0-9]+(/[1-9][0-9]*)?` into a canonical rational. Throws
/// InputError on anything else.
Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& s);

/// Bit length of numerator plus denominator; the pivot-selection metric.
std::size_t bit_size(const Scalar& s);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(std::span<const Scalar> v);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Scalar& c, const Vector& v);
Vector& axpy(Vector& y, const Scalar& a, const Vector& x);  // y += a*x
/// Kronecker product; index (i, j) maps to i * b.size() + j.
Vector kron(const Vector& a, const Vector& b);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Matrix transpose() const;
  bool is_zero() const;

  Vector operator*(const Vector& v) const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  friend Matrix operator*(const Scalar& c, const Matrix& m);

  bool operator==(const Matrix& other) const = default;

  /// Row-major flattening, index r * cols + c.
  const std::vector<Scalar>& entries() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
/// Block-diagonal matrix with the given blocks in order.
Matrix block_diagonal(std::span<const Matrix> blocks);
/// Vertical concatenation; all parts must share the column count.
Matrix vstack(std::span<const Matrix> parts, std::size_t cols);

struct Echelon {
  Matrix reduced;                      // reduced row echelon form (rank rows kept)
  std::vector<std::size_t> pivots;     // pivot column of each kept row
};

/// Reduced row echelon form. The pivot in each column is the nonzero entry of
/// smallest bit size among the remaining rows.
Echelon row_reduce(const Matrix& m);

std::size_t rank(const Matrix& m);

class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}
  /// Spans the given vectors; dependent vectors are dropped, the kept basis is
  /// the reduced echelon basis of the span.
  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }

  bool contains(const Vector& v) const;
  /// Coordinates of v in basis(); empty optional when v is outside.
  std::optional<Vector> coordinates(const Vector& v) const;
  Vector combine(const Vector& coords) const;
  bool operator==(const Subspace& other) const;
  Subspace operator+(const Subspace& other) const;

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Vector> basis_;      // reduced echelon rows
  std::vector<std::size_t> pivots_;
};

Subspace nullspace_basis(const Matrix& m);

struct LinearSolution {
  Vector particular;
  Subspace homogeneous;
};

/// All x with m * x = b; empty optional when inconsistent.
std::optional<LinearSolution> solve(const Matrix& m, const Vector& b);

/// Quotient of Q^ambient_dim by the span of the relation vectors.
///
/// The complement is the lexicographically first set of standard basis
/// vectors: e_j is chosen iff it is independent of the relations together
/// with e_0 .. e_{j-1}.
struct QuotientSpace {
  std::size_t ambient_dim = 0;
  std::size_t dim = 0;
  Matrix project;                       // dim x ambient_dim
  std::vector<std::size_t> complement;  // standard-basis indices forming the section
  Subspace relations;

  Vector apply(const Vector& v) const { return project * v; }
  Matrix section() const;               // ambient_dim x dim
  Vector lift(const Vector& coset) const { return section() * coset; }
};

QuotientSpace quotient_space(std::size_t ambient_dim, const std::vector<Vector>& relations);

/// Sparse vector: strictly increasing indices, nonzero values.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

/// Incremental row echelon over sparse vectors; each stored row is led by its
/// largest index. Used for large relation spans where dense elimination would
/// waste memory.
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t ambient_dim) : ambient_dim_(ambient_dim), rows_(ambient_dim) {}

  /// Adds v to the span; returns true when the rank grew.
  bool insert(SparseVector v);
  /// Remainder of v after reduction; zero iff v lies in the span.
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t rank() const { return rank_; }
  bool is_pivot(std::size_t index) const { return !rows_[index].empty(); }

 private:
  std::size_t ambient_dim_;
  std::size_t rank_ = 0;
  std::vector<SparseVector> rows_;  // indexed by leading index; empty when absent
};

SparseVector to_sparse(const Vector& v);

}  // namespace mrb
