#pragma once

#include "ginv/core_linalg.hpp"

// W-weighted machinery for a rectangular A (q x n) and weight W (n x q).
namespace ginv {

/// (A, W) together with k = max(Ind(AW), Ind(WA), 1) and the tolerances
/// every downstream formula uses. Construct through make_weighted_pair.
class WeightedPair {
 public:
  const ComplexMatrix& a() const { return a_; }
  const ComplexMatrix& w() const { return w_; }
  int k() const { return k_; }
  int index_aw() const { return index_aw_; }
  int index_wa() const { return index_wa_; }
  const ToleranceConfig& tol() const { return tol_; }
  // ||A||_2 ||W||_2, the reference for rank decisions on AW, WA and powers.
  double product_scale() const { return product_scale_; }

  Index rows() const { return a_.rows(); }  // q
  Index cols() const { return a_.cols(); }  // n

  ComplexMatrix aw() const { return a_ * w_; }
  ComplexMatrix wa() const { return w_ * a_; }

 private:
  friend WeightedPair make_weighted_pair(ComplexMatrix a, ComplexMatrix w,
                                         const ToleranceConfig& tol);
  WeightedPair() = default;

  ComplexMatrix a_;
  ComplexMatrix w_;
  int k_ = 1;
  int index_aw_ = 0;
  int index_wa_ = 0;
  ToleranceConfig tol_;
  double product_scale_ = 0.0;
};

/// Throws ShapeError unless W is n x q for a q x n A, and DomainError when W
/// is the zero matrix.
WeightedPair make_weighted_pair(ComplexMatrix a, ComplexMatrix w,
                                const ToleranceConfig& tol = {});

/// A ((WA)^D)^2
ComplexMatrix w_drazin(const WeightedPair& p);

/// A ((WA)^core-EP)^2
ComplexMatrix w_core_ep(const WeightedPair& p);

/// (A^{core-EP,W})^{*(m+1)} W A^{*m}
ComplexMatrix w_m_weak_group(const WeightedPair& p, int m);

/// B ((WB)^#)^2 for B q x n, the W-weighted group inverse. IndexError when
/// Ind(WB) > 1.
/// `scale` is the rank reference for WB (default ||W|| ||B||).
ComplexMatrix w_group(const ComplexMatrix& b, const ComplexMatrix& w,
                      const ToleranceConfig& tol, double scale = 0.0);

/// Simultaneous block upper-triangularization
///   A = U [A1 A2; 0 A3] V*,   W = V [W1 W2; 0 W3] U*
/// with A1, W1 nonsingular t x t and A3 W3, W3 A3 nilpotent.
struct WeightedCoreEPDecomposition {
  ComplexMatrix u;  // q x q
  ComplexMatrix v;  // n x n
  Index t = 0;
  ComplexMatrix a1, a2, a3;
  ComplexMatrix w1, w2, w3;

  ComplexMatrix assemble_a() const;
  ComplexMatrix assemble_w() const;
};

/// Hartwig-Spindelbock form
///   A = T [S1 K1, S1 L1; 0 0] S*,   W = S [S2 K2, S2 L2; 0 0] T*
/// with S1, S2 positive diagonal and K K* + L L* = I.
struct HartwigSpindelbockDecomposition {
  ComplexMatrix t;  // q x q
  ComplexMatrix s;  // n x n
  Eigen::VectorXd sigma1;
  ComplexMatrix k1, l1;  // r1 x r1, r1 x (n - r1)
  Eigen::VectorXd sigma2;
  ComplexMatrix k2, l2;  // r2 x r2, r2 x (q - r2)

  Index r1() const { return sigma1.size(); }
  Index r2() const { return sigma2.size(); }

  ComplexMatrix assemble_a() const;
  ComplexMatrix assemble_w() const;
};

/// U and V come from orthonormal bases of R((AW)^k) and R((WA)^k) completed
/// to unitaries. The zero lower-left blocks, nonsingular leading blocks and
/// nilpotent trailing products are verified; DecompositionError otherwise.
WeightedCoreEPDecomposition weighted_core_ep_decompose(const WeightedPair& p,
                                                       const ToleranceConfig& tol);

/// Built from the SVDs of A and W. DomainError when A = 0.
HartwigSpindelbockDecomposition weighted_hs_decompose(const WeightedPair& p,
                                                      const ToleranceConfig& tol);

namespace detail {

// Index-clamped weighted m-weak group inverse of a raw pair. Unlike the public
// entry point this accepts a zero weight, which arises for sub-blocks.
// `scale_wa` is the rank reference for WA.
ComplexMatrix w_m_weak_group_raw(const ComplexMatrix& a, const ComplexMatrix& w, int m,
                                 const ToleranceConfig& tol, double scale_wa = 0.0);

}  // namespace detail

}  // namespace ginv
