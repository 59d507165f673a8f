#pragma once

#include <random>
#include <string>
#include <vector>

#include "mrb/algebra.hpp"
#include "mrb/linalg.hpp"
#include "mrb/modules.hpp"

namespace mrb::support {

using Rng = std::mt19937_64;

inline Scalar random_scalar(Rng& rng, int span = 4, int max_den = 3) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, max_den);
  Scalar s(num(rng), den(rng));
  s.canonicalize();
  return s;
}

inline Vector random_vector(Rng& rng, std::size_t n, int span = 4) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar(rng, span));
  return v;
}

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int span = 4) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_scalar(rng, span);
  return m;
}

/// Sparse-ish integer matrix of bounded rank: product of random factors.
inline Matrix random_low_rank(Rng& rng, std::size_t rows, std::size_t cols, std::size_t r) {
  return random_matrix(rng, rows, r, 2) * random_matrix(rng, r, cols, 2);
}

inline InstancePtr catalog_instance(const std::string& name) {
  return verified_instance(catalog::by_name(name));
}

/// Fraction-free (Bareiss) elimination on a cleared-denominator copy.
inline std::size_t bareiss_rank(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < cols; ++c) l = lcm(l, m(r, c).get_den());
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = m(r, c).get_num() * (l / m(r, c).get_den());
  }
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

inline bool in_span(const std::vector<Vector>& basis, const Vector& v) {
  if (basis.empty()) return is_zero(v);
  Matrix a = Matrix::from_columns(basis, v.size());
  std::vector<Vector> with = basis;
  with.push_back(v);
  return bareiss_rank(a) == bareiss_rank(Matrix::from_columns(with, v.size()));
}

}  // namespace mrb::support
