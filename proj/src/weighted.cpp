#include "ginv/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ginv/classical.hpp"
#include "ginv/errors.hpp"

namespace ginv {

WeightedPair make_weighted_pair(ComplexMatrix a, ComplexMatrix w, const ToleranceConfig& tol) {
  tol.validate();
  require_valid(a, "A");
  require_valid(w, "W");
  if (w.rows() != a.cols() || w.cols() != a.rows())
    throw ShapeError("W must be " + std::to_string(a.cols()) + "x" +
                     std::to_string(a.rows()) + " for a " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " A, got " + std::to_string(w.rows()) + "x" +
                     std::to_string(w.cols()));
  if (w.cwiseAbs().maxCoeff() == 0.0) throw DomainError("weight matrix must be nonzero");

  WeightedPair p;
  p.a_ = std::move(a);
  p.w_ = std::move(w);
  p.tol_ = tol;
  p.product_scale_ = spectral_norm(p.a_) * spectral_norm(p.w_);
  p.index_aw_ = index_of(p.aw(), tol, p.product_scale_);
  p.index_wa_ = index_of(p.wa(), tol, p.product_scale_);
  p.k_ = std::max({p.index_aw_, p.index_wa_, 1});
  return p;
}

ComplexMatrix w_drazin(const WeightedPair& p) {
  const ComplexMatrix d = drazin(p.wa(), p.tol(), p.product_scale()).inverse;
  return p.a() * d * d;
}

ComplexMatrix w_core_ep(const WeightedPair& p) {
  const ComplexMatrix c = core_ep(p.wa(), p.tol(), p.product_scale()).inverse;
  return p.a() * c * c;
}

namespace detail {

ComplexMatrix w_m_weak_group_raw(const ComplexMatrix& a, const ComplexMatrix& w, int m,
                                 const ToleranceConfig& tol, double scale_wa) {
  if (m < 1) throw ParameterError("m must be a positive integer, got " + std::to_string(m));
  const ComplexMatrix wa = w * a;
  const ComplexMatrix c = core_ep(wa, tol, scale_wa).inverse;
  const ComplexMatrix a_core = a * c * c;
  // (A^{c,W})^{*(m+1)} W A^{*m} = A^{c,W} (W A^{c,W})^m (WA)^m
  return a_core * matrix_power(w * a_core, m) * matrix_power(wa, m);
}

}  // namespace detail

ComplexMatrix w_m_weak_group(const WeightedPair& p, int m) {
  return detail::w_m_weak_group_raw(p.a(), p.w(), m, p.tol(), p.product_scale());
}

ComplexMatrix w_group(const ComplexMatrix& b, const ComplexMatrix& w,
                      const ToleranceConfig& tol, double scale) {
  if (scale <= 0.0) scale = spectral_norm(w) * spectral_norm(b);
  const ComplexMatrix g = group_inverse(w * b, tol, scale).inverse;
  return b * g * g;
}

namespace {

ComplexMatrix upper_block(const ComplexMatrix& b11, const ComplexMatrix& b12,
                          const ComplexMatrix& b22) {
  const Index t = b11.rows();
  ComplexMatrix out = ComplexMatrix::Zero(t + b22.rows(), b11.cols() + b22.cols());
  out.topLeftCorner(t, b11.cols()) = b11;
  out.topRightCorner(t, b12.cols()) = b12;
  out.bottomRightCorner(b22.rows(), b22.cols()) = b22;
  return out;
}

double smallest_singular_value(const ComplexMatrix& m) {
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace

ComplexMatrix WeightedCoreEPDecomposition::assemble_a() const {
  return u * upper_block(a1, a2, a3) * v.adjoint();
}

ComplexMatrix WeightedCoreEPDecomposition::assemble_w() const {
  return v * upper_block(w1, w2, w3) * u.adjoint();
}

WeightedCoreEPDecomposition weighted_core_ep_decompose(const WeightedPair& p,
                                                       const ToleranceConfig& tol) {
  const ComplexMatrix& a = p.a();
  const ComplexMatrix& w = p.w();
  const Index q = p.rows();
  const Index n = p.cols();

  const SubspaceBasis core_aw = power_range_basis(p.aw(), p.k(), tol, p.product_scale());
  const SubspaceBasis core_wa = power_range_basis(p.wa(), p.k(), tol, p.product_scale());
  if (core_aw.dimension() != core_wa.dimension())
    throw DecompositionError("rank((AW)^k) = " + std::to_string(core_aw.dimension()) +
                                 " differs from rank((WA)^k) = " +
                                 std::to_string(core_wa.dimension()),
                             std::abs(static_cast<double>(core_aw.dimension() -
                                                          core_wa.dimension())));
  const Index t = core_aw.dimension();

  WeightedCoreEPDecomposition d;
  d.t = t;
  d.u = complete_to_unitary(core_aw);
  d.v = complete_to_unitary(core_wa);

  const ComplexMatrix a_hat = d.u.adjoint() * a * d.v;
  const ComplexMatrix w_hat = d.v.adjoint() * w * d.u;

  const double a_leak = frobenius(a_hat.bottomLeftCorner(q - t, t)) / frobenius(a);
  const double w_leak = frobenius(w_hat.bottomLeftCorner(n - t, t)) / frobenius(w);
  const double leak = std::max(a_leak, w_leak);
  if (leak > tol.cmp_rel_tol)
    throw DecompositionError("lower-left blocks do not vanish (relative residual " +
                                 std::to_string(leak) + ")",
                             leak);

  d.a1 = a_hat.topLeftCorner(t, t);
  d.a2 = a_hat.topRightCorner(t, n - t);
  d.a3 = a_hat.bottomRightCorner(q - t, n - t);
  d.w1 = w_hat.topLeftCorner(t, t);
  d.w2 = w_hat.topRightCorner(t, q - t);
  d.w3 = w_hat.bottomRightCorner(n - t, q - t);

  if (t > 0) {
    const double floor_a = tol.rank_tol_for(q, n) * spectral_norm(a);
    const double floor_w = tol.rank_tol_for(n, q) * spectral_norm(w);
    const double smin_a = smallest_singular_value(d.a1);
    const double smin_w = smallest_singular_value(d.w1);
    if (smin_a <= floor_a || smin_w <= floor_w)
      throw DecompositionError("leading blocks A1, W1 are numerically singular",
                               std::min(smin_a, smin_w));
  }

  // A3 W3 and W3 A3 must be nilpotent with index at most k.
  const double scale = std::pow(spectral_norm(a) * spectral_norm(w), p.k());
  const auto nil_residual = [&](const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return frobenius(matrix_power(m, p.k())) / scale;
  };
  const double nil = std::max(nil_residual(d.a3 * d.w3), nil_residual(d.w3 * d.a3));
  if (nil > tol.cmp_rel_tol)
    throw DecompositionError("trailing products are not nilpotent (relative residual " +
                                 std::to_string(nil) + ")",
                             nil);
  return d;
}

namespace {

ComplexMatrix hs_block(const ComplexMatrix& outer, const Eigen::VectorXd& sigma,
                       const ComplexMatrix& k, const ComplexMatrix& l,
                       const ComplexMatrix& inner) {
  const Index r = sigma.size();
  ComplexMatrix mid = ComplexMatrix::Zero(outer.cols(), inner.cols());
  mid.topLeftCorner(r, k.cols()) = sigma.asDiagonal() * k;
  mid.topRightCorner(r, l.cols()) = sigma.asDiagonal() * l;
  return outer * mid * inner.adjoint();
}

}  // namespace

ComplexMatrix HartwigSpindelbockDecomposition::assemble_a() const {
  return hs_block(t, sigma1, k1, l1, s);
}

ComplexMatrix HartwigSpindelbockDecomposition::assemble_w() const {
  return hs_block(s, sigma2, k2, l2, t);
}

HartwigSpindelbockDecomposition weighted_hs_decompose(const WeightedPair& p,
                                                      const ToleranceConfig& tol) {
  const ComplexMatrix& a = p.a();
  const ComplexMatrix& w = p.w();
  if (a.cwiseAbs().maxCoeff() == 0.0)
    throw DomainError("Hartwig-Spindelbock form requires a nonzero A");

  using Svd = Eigen::JacobiSVD<ComplexMatrix>;
  const Svd svd_a(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Svd svd_w(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Index r1 = rank_of(a, tol);
  const Index r2 = rank_of(w, tol);

  HartwigSpindelbockDecomposition d;
  d.t = svd_a.matrixU();
  d.s = svd_w.matrixU();
  d.sigma1 = svd_a.singularValues().head(r1);
  d.sigma2 = svd_w.singularValues().head(r2);

  const ComplexMatrix y1 = svd_a.matrixV().leftCols(r1).adjoint() * d.s;
  const ComplexMatrix y2 = svd_w.matrixV().leftCols(r2).adjoint() * d.t;
  d.k1 = y1.leftCols(r1);
  d.l1 = y1.rightCols(y1.cols() - r1);
  d.k2 = y2.leftCols(r2);
  d.l2 = y2.rightCols(y2.cols() - r2);

  const double residual = std::max(relative_difference(d.assemble_a(), a),
                                   relative_difference(d.assemble_w(), w));
  if (residual > tol.cmp_rel_tol)
    throw DecompositionError("Hartwig-Spindelbock reconstruction residual " +
                                 std::to_string(residual),
                             residual);
  return d;
}

}  // namespace ginv
