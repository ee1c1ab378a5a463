#pragma once

#include <doctest.h>

#include <complex>
#include <initializer_list>
#include <random>
#include <vector>

#include "ginv/core_linalg.hpp"

namespace ginv::test {

// Real matrix from nested braces, row by row.
inline ComplexMatrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  ComplexMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline ComplexMatrix random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

// Random matrix of exact rank r (r <= min(rows, cols)).
inline ComplexMatrix random_rank(Index rows, Index cols, Index r, std::mt19937_64& rng) {
  return random_matrix(rows, r, rng) * random_matrix(r, cols, rng);
}

inline double rel(const ComplexMatrix& a, const ComplexMatrix& b) {
  const double ref = std::max(a.norm(), b.norm());
  return ref == 0.0 ? (a - b).norm() : (a - b).norm() / ref;
}

// Square matrix S diag(J, C) S^-1 with J nilpotent of the given index (Jordan
// blocks of sizes `blocks`) and C a random nonsingular core of size `core`.
inline ComplexMatrix with_index(const std::vector<int>& blocks, Index core, std::mt19937_64& rng) {
  Index n = core;
  for (int b : blocks) n += b;
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  d.topLeftCorner(core, core) = random_matrix(core, core, rng) + 3.0 * identity(core);
  Index at = core;
  for (int b : blocks) {
    for (int i = 0; i + 1 < b; ++i) d(at + i, at + i + 1) = 1.0;
    at += b;
  }
  const ComplexMatrix s = random_matrix(n, n, rng) + 2.0 * identity(n);
  return s * d * s.inverse();
}

}  // namespace ginv::test
