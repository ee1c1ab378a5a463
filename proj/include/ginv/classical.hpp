#pragma once

#include <optional>

#include "ginv/core_linalg.hpp"

// Unweighted generalized inverses of square matrices. `scale` is the rank
// reference described in core_linalg.hpp; callers inverting a product such
// as WA pass ||W|| ||A||.
namespace ginv {

enum class SquareInverseKind { drazin, group, core_ep, dmp, m_weak_group, m_weak_group_mp };

struct SquareInverseResult {
  ComplexMatrix inverse;
  SquareInverseKind kind;
  int index_used = 0;
  std::optional<int> m_used;
};

/// A^D = (A^core-EP)^(l+1) A^l with l = max(Ind(A), 1).
SquareInverseResult drazin(const ComplexMatrix& a, const ToleranceConfig& tol,
                           double scale = 0.0);

/// Drazin inverse for Ind(A) <= 1; IndexError otherwise.
SquareInverseResult group_inverse(const ComplexMatrix& a, const ToleranceConfig& tol,
                                  double scale = 0.0);

/// Q (Q* A Q)^-1 Q* for an orthonormal basis Q of R(A^l), l = max(Ind(A), 1).
SquareInverseResult core_ep(const ComplexMatrix& a, const ToleranceConfig& tol,
                            double scale = 0.0);

/// (A^core-EP)^(m+1) A^m
SquareInverseResult m_weak_group(const ComplexMatrix& a, int m, const ToleranceConfig& tol,
                                 double scale = 0.0);

/// A^D A A^+
SquareInverseResult dmp(const ComplexMatrix& a, const ToleranceConfig& tol,
                        double scale = 0.0);

/// A^{wg_m} A A^+
SquareInverseResult m_weak_group_mp(const ComplexMatrix& a, int m,
                                    const ToleranceConfig& tol, double scale = 0.0);

}  // namespace ginv
