#pragma once

#include "ginv/core_linalg.hpp"
#include "ginv/weighted.hpp"

// Constrained approximation, matrix-equation and Cramer's-rule solvers built
// on the W-weighted m-weak group (MP) inverses.
namespace ginv {

struct ConstrainedSolveResult {
  ComplexMatrix x;
  double residual_frobenius = 0.0;   // objective value at x
  double constraint_residual = 0.0;  // ||(I - QQ*) x||_F for the constraint range Q
};

/// min ||W A^{*(m+1)} W X - W A^{*m} B||_F  over  R(X) in R((AW)^k);
/// the minimizer is A^{wg_m,W} B. B is n x p and X is q x p.
ConstrainedSolveResult solve_constrained_wg(const WeightedPair& p, int m,
                                            const ComplexMatrix& b);

/// min ||W A^{*(m+1)} X - W A^{*(m+1)} A^+ B||_F  over  R(X) in R((WA)^k);
/// the minimizer is A^{wg_m,W,+} B. B is q x p and X is n x p.
ConstrainedSolveResult solve_constrained_wmwgmp(const WeightedPair& p, int m,
                                                const ComplexMatrix& b);

/// Objective of the first problem at an arbitrary X (q x p), B n x p.
double objective_wg(const WeightedPair& p, int m, const ComplexMatrix& b,
                    const ComplexMatrix& x);

/// Objective of the second problem at an arbitrary X (n x p).
double objective_wmwgmp(const WeightedPair& p, int m, const ComplexMatrix& b,
                        const ComplexMatrix& x);

/// X = A^{wg_m,W,+} B + (I_n - A^{wg_m,W,+} A) Z, the general solution of
///   ((WA)^k)^* (WA)^(m+1) X = ((WA)^k)^* (WA)^(m+1) A^+ B.
ComplexMatrix general_solution(const WeightedPair& p, int m, const ComplexMatrix& b,
                               const ComplexMatrix& z);

/// ||H X - H A^+ B||_F relative to (||A|| ||W||)^(k+m+1) max(||X||_F, ||A^+ B||_F),
/// where H = ((WA)^k)^* (WA)^(m+1).
double equation_residual(const WeightedPair& p, int m, const ComplexMatrix& b,
                         const ComplexMatrix& x);

/// E = V (U V)^-1 U with R(V) = N(((WA)^k)^* (WA)^(m+1)) and N(U) = R((WA)^k).
/// When t = n the bordering is vacuous and E = 0.
struct BorderingData {
  ComplexMatrix e;  // n x n
  ComplexMatrix u;  // (n - t) x n
  ComplexMatrix v;  // n x (n - t)
  Index t = 0;
  ComplexMatrix ga;  // (WA)^k ((WA)^k)^* (WA)^(m+1)
};

BorderingData build_bordering_E(const WeightedPair& p, int m, const ToleranceConfig& tol);

enum class CramerRhs {
  // columns of (WA)^k ((WA)^k)^* (WA)^(m+1) A^+ B; consistent with GA + E
  bordered,
  // columns of ((WA)^k)^* (WA)^(m+1) A^+ B, without the leading (WA)^k
  unbordered,
};

struct CramerOptions {
  CramerRhs rhs = CramerRhs::bordered;
  Index max_n = 64;
};

/// x_ij = det((GA + E)(i <- b_j)) / det(GA + E). CapacityError when n > max_n.
ComplexMatrix cramer_solve(const WeightedPair& p, int m, const ComplexMatrix& b,
                           const CramerOptions& options = {});

}  // namespace ginv
