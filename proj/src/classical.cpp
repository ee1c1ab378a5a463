#include "ginv/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ginv/errors.hpp"

namespace ginv {

namespace {

void require_m(int m) {
  if (m < 1) throw ParameterError("m must be a positive integer, got " + std::to_string(m));
}

// A^core-EP = Q (Q* A Q)^-1 Q* for an orthonormal basis Q of R(A^l). The
// basis comes from re-orthogonalized iteration, which avoids forming the
// pseudo-inverse of a high power of A.
ComplexMatrix core_ep_with_exponent(const ComplexMatrix& a, int l, const ToleranceConfig& tol,
                                    double norm) {
  const ComplexMatrix q = power_range_basis(a, l, tol, norm).matrix;
  if (q.cols() == 0) return ComplexMatrix::Zero(a.rows(), a.cols());
  const ComplexMatrix compressed = q.adjoint() * a * q;
  return q * compressed.partialPivLu().solve(q.adjoint());
}

// A^D = (A^core-EP)^(l+1) A^l, valid for any l >= Ind(A).
ComplexMatrix drazin_with_exponent(const ComplexMatrix& a, int l, const ToleranceConfig& tol,
                                   double norm) {
  const ComplexMatrix c = core_ep_with_exponent(a, l, tol, norm);
  return matrix_power(c, l + 1) * matrix_power(a, l);
}

struct Prepared {
  int index;
  int exponent;  // max(index, 1)
  double norm;   // max(||A||, scale)
};

Prepared prepare(const ComplexMatrix& a, const ToleranceConfig& tol, double scale) {
  require_valid(a, "A");
  require_square(a, "A");
  const int k = index_of(a, tol, scale);
  return {k, std::max(k, 1), std::max(spectral_norm(a), scale)};
}

}  // namespace

SquareInverseResult drazin(const ComplexMatrix& a, const ToleranceConfig& tol, double scale) {
  const Prepared pr = prepare(a, tol, scale);
  return {drazin_with_exponent(a, pr.exponent, tol, pr.norm), SquareInverseKind::drazin,
          pr.index, std::nullopt};
}

SquareInverseResult group_inverse(const ComplexMatrix& a, const ToleranceConfig& tol,
                                  double scale) {
  const Prepared pr = prepare(a, tol, scale);
  if (pr.index > 1)
    throw IndexError("group inverse requires index <= 1, matrix has index " +
                         std::to_string(pr.index),
                     pr.index);
  return {drazin_with_exponent(a, 1, tol, pr.norm), SquareInverseKind::group, pr.index,
          std::nullopt};
}

SquareInverseResult core_ep(const ComplexMatrix& a, const ToleranceConfig& tol, double scale) {
  const Prepared pr = prepare(a, tol, scale);
  ComplexMatrix x = core_ep_with_exponent(a, pr.exponent, tol, pr.norm);
  return {std::move(x), SquareInverseKind::core_ep, pr.index, std::nullopt};
}

SquareInverseResult m_weak_group(const ComplexMatrix& a, int m, const ToleranceConfig& tol,
                                 double scale) {
  require_m(m);
  SquareInverseResult ce = core_ep(a, tol, scale);
  ComplexMatrix x = matrix_power(ce.inverse, m + 1) * matrix_power(a, m);
  return {std::move(x), SquareInverseKind::m_weak_group, ce.index_used, m};
}

SquareInverseResult dmp(const ComplexMatrix& a, const ToleranceConfig& tol, double scale) {
  SquareInverseResult d = drazin(a, tol, scale);
  ComplexMatrix x = d.inverse * a * moore_penrose(a, tol, scale);
  return {std::move(x), SquareInverseKind::dmp, d.index_used, std::nullopt};
}

SquareInverseResult m_weak_group_mp(const ComplexMatrix& a, int m,
                                    const ToleranceConfig& tol, double scale) {
  SquareInverseResult wg = m_weak_group(a, m, tol, scale);
  ComplexMatrix x = wg.inverse * a * moore_penrose(a, tol, scale);
  return {std::move(x), SquareInverseKind::m_weak_group_mp, wg.index_used, m};
}

}  // namespace ginv
