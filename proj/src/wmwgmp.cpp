#include "ginv/wmwgmp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "ginv/classical.hpp"
#include "ginv/errors.hpp"

namespace ginv {

std::string_view to_string(RouteId route) {
  switch (route) {
    case RouteId::DEF: return "DEF";
    case RouteId::R1: return "R1";
    case RouteId::R2: return "R2";
    case RouteId::R3: return "R3";
    case RouteId::R4: return "R4";
    case RouteId::R5: return "R5";
    case RouteId::R6: return "R6";
    case RouteId::R7: return "R7";
    case RouteId::R8: return "R8";
    case RouteId::R9: return "R9";
  }
  return "?";
}

RouteId parse_route(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (RouteId r : kAllRoutes)
    if (to_string(r) == upper) return r;
  throw ParameterError("unknown route '" + std::string(text) + "' (expected DEF, R1..R9)");
}

namespace {

void require_m(int m) {
  if (m < 1) throw ParameterError("m must be a positive integer, got " + std::to_string(m));
}

// Shared ingredients of the representations.
struct Ingredients {
  const WeightedPair& p;
  ComplexMatrix wa;
  ComplexMatrix a_pinv;
  double ps;  // ||A|| ||W||
  double norm_w;

  explicit Ingredients(const WeightedPair& pair)
      : p(pair),
        wa(pair.wa()),
        a_pinv(moore_penrose(pair.a(), pair.tol())),
        ps(pair.product_scale()),
        norm_w(spectral_norm(pair.w())) {}

  const ToleranceConfig& tol() const { return p.tol(); }
};

ComplexMatrix route_def(const Ingredients& in, int m) {
  const auto& p = in.p;
  return p.w() * w_m_weak_group(p, m) * in.wa * in.a_pinv;
}

// W ((AW)^m A^{c,W} W A)^{#,W} W A^{*m} A^+
ComplexMatrix route_r1(const Ingredients& in, int m) {
  const auto& p = in.p;
  const ComplexMatrix b = matrix_power(p.aw(), m) * w_core_ep(p) * in.wa;
  return p.w() * w_group(b, p.w(), in.tol()) * matrix_power(in.wa, m) * in.a_pinv;
}

// ((WA)^D)^(m+1) P_{R((WA)^k)} W A^{*(m+1)} A^+
ComplexMatrix route_r2(const Ingredients& in, int m) {
  const auto& p = in.p;
  const ComplexMatrix d = drazin(in.wa, in.tol(), in.ps).inverse;
  const ComplexMatrix proj = orthogonal_projector(power_range_basis(in.wa, p.k(), in.tol(), in.ps));
  return matrix_power(d, m + 1) * proj * matrix_power(in.wa, m + 1) * in.a_pinv;
}

// W A^{*l} W (W A^{*(l+m+1)} W)^+ W A^{*(m+1)} A^+,  l >= k
ComplexMatrix route_r3(const Ingredients& in, int m, int l) {
  const auto& p = in.p;
  const ComplexMatrix inner = matrix_power(in.wa, l + m + 1) * p.w();
  const double scale = std::pow(in.ps, l + m + 1) * in.norm_w;
  return p.w() * star_power(p.a(), p.w(), l) * p.w() * moore_penrose(inner, in.tol(), scale) *
         matrix_power(in.wa, m + 1) * in.a_pinv;
}

// W (W A^{*(m+1)} W P_{R((AW)^k)})^+ W A^{*(m+1)} A^+
ComplexMatrix route_r4(const Ingredients& in, int m) {
  const auto& p = in.p;
  const ComplexMatrix proj = orthogonal_projector(power_range_basis(p.aw(), p.k(), in.tol(), in.ps));
  const ComplexMatrix inner = matrix_power(in.wa, m + 1) * p.w() * proj;
  const double scale = std::pow(in.ps, m + 1) * in.norm_w;
  return p.w() * moore_penrose(inner, in.tol(), scale) * matrix_power(in.wa, m + 1) *
         in.a_pinv;
}

// W A^{*(m-1)} W (A^{*m})^{wg,W} W A A^+, with W A^{*0} = I_n
ComplexMatrix route_r5(const Ingredients& in, int m) {
  const auto& p = in.p;
  const ComplexMatrix lead = weight_times_star_power(p.w(), p.a(), m - 1) * p.w();
  const ComplexMatrix weak =
      detail::w_m_weak_group_raw(star_power(p.a(), p.w(), m), p.w(), 1, in.tol(),
                                 std::pow(in.ps, m));
  return lead * weak * in.wa * in.a_pinv;
}

// ((WA)^{wg})^m W A^{*m} A^+
ComplexMatrix route_r6(const Ingredients& in, int m) {
  const ComplexMatrix weak = m_weak_group(in.wa, 1, in.tol(), in.ps).inverse;
  return matrix_power(weak, m) * matrix_power(in.wa, m) * in.a_pinv;
}

// (WA)^{wg_m} W A A^+
ComplexMatrix route_r7(const Ingredients& in, int m) {
  return m_weak_group(in.wa, m, in.tol(), in.ps).inverse * in.wa * in.a_pinv;
}

// Orthogonal projector onto R(m) with directions below `threshold` dropped.
ComplexMatrix range_projector_above(const ComplexMatrix& m, double threshold) {
  if (m.size() == 0) return ComplexMatrix::Zero(m.rows(), m.rows());
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv(r) > threshold) ++r;
  const ComplexMatrix u = svd.matrixU().leftCols(r);
  return u * u.adjoint();
}

// Canonical form over the weighted core-EP decomposition:
//   X = V [A1^-1, (W1A1)^-1 W2 A3 A3^+ + (W1A1)^-(m+1) B_m W3 A3 A3^+; 0 0] U*
//   B_m = sum_{j<m} (W1A1)^j (W1A2 + W2A3) (W3A3)^(m-1-j)
ComplexMatrix route_r8(const Ingredients& in, int m) {
  const auto& p = in.p;
  const WeightedCoreEPDecomposition d = weighted_core_ep_decompose(p, in.tol());
  const Index q = p.rows();
  const Index n = p.cols();
  const Index t = d.t;
  if (t == 0) return ComplexMatrix::Zero(n, q);

  const ComplexMatrix w1a1 = d.w1 * d.a1;
  const ComplexMatrix w1a1_inv = w1a1.partialPivLu().inverse();
  const ComplexMatrix w3a3 = d.w3 * d.a3;
  const ComplexMatrix mixed = d.w1 * d.a2 + d.w2 * d.a3;

  // Zeroth powers are identities of the matching size.
  ComplexMatrix b_m = ComplexMatrix::Zero(t, n - t);
  for (int j = 0; j < m; ++j)
    b_m += matrix_power(w1a1, j) * mixed * matrix_power(w3a3, m - 1 - j);

  const double a3_floor = in.tol().rank_tol_for(q, n) * spectral_norm(p.a());
  const ComplexMatrix a3_proj = range_projector_above(d.a3, a3_floor);

  ComplexMatrix block = ComplexMatrix::Zero(n, q);
  block.topLeftCorner(t, t) = d.a1.partialPivLu().inverse();
  block.topRightCorner(t, q - t) =
      w1a1_inv * d.w2 * a3_proj + matrix_power(w1a1_inv, m + 1) * b_m * d.w3 * a3_proj;
  return d.v * block * d.u.adjoint();
}

// Canonical form over the Hartwig-Spindelbock decomposition:
//   X = S [w a^{wg_m,w} w, 0; 0 0] T*
// where a = S1 [K1 L1] restricted to the leading r2 columns and
// w = S2 [K2 L2] restricted to the leading r1 columns. For r1 = r2 these are
// S1 K1 and S2 K2.
ComplexMatrix route_r9(const Ingredients& in, int m) {
  const auto& p = in.p;
  const HartwigSpindelbockDecomposition d = weighted_hs_decompose(p, in.tol());
  const Index q = p.rows();
  const Index n = p.cols();
  const Index r1 = d.r1();
  const Index r2 = d.r2();

  ComplexMatrix y1(r1, n);
  y1 << d.k1, d.l1;
  ComplexMatrix y2(r2, q);
  y2 << d.k2, d.l2;
  const ComplexMatrix a_small = d.sigma1.asDiagonal() * y1.leftCols(r2);
  const ComplexMatrix w_small = d.sigma2.asDiagonal() * y2.leftCols(r1);

  ComplexMatrix block = ComplexMatrix::Zero(n, q);
  block.topLeftCorner(r2, r1) =
      w_small * detail::w_m_weak_group_raw(a_small, w_small, m, in.tol(), in.ps) * w_small;
  return d.s * block * d.t.adjoint();
}

}  // namespace

WmwgmpResult wmwgmp(const WeightedPair& p, int m) {
  return wmwgmp_route(p, m, RouteId::DEF);
}

WmwgmpResult wmwgmp_route(const WeightedPair& p, int m, RouteId route,
                          const RouteOptions& options) {
  require_m(m);
  const Ingredients in(p);
  ComplexMatrix x;
  switch (route) {
    case RouteId::DEF: x = route_def(in, m); break;
    case RouteId::R1: x = route_r1(in, m); break;
    case RouteId::R2: x = route_r2(in, m); break;
    case RouteId::R3: {
      const int l = options.r3_exponent.value_or(p.k());
      if (l < p.k())
        throw ParameterError("R3 exponent must be at least k = " + std::to_string(p.k()));
      x = route_r3(in, m, l);
      break;
    }
    case RouteId::R4: x = route_r4(in, m); break;
    case RouteId::R5: x = route_r5(in, m); break;
    case RouteId::R6: x = route_r6(in, m); break;
    case RouteId::R7: x = route_r7(in, m); break;
    case RouteId::R8: x = route_r8(in, m); break;
    case RouteId::R9: x = route_r9(in, m); break;
  }
  return {std::move(x), route, m, p.k()};
}

ComplexMatrix projector(const WeightedPair& p, int m, ProjectorSide side) {
  const ComplexMatrix x = wmwgmp(p, m).inverse;
  return side == ProjectorSide::right ? ComplexMatrix(p.a() * x) : ComplexMatrix(x * p.a());
}

DefiningSystemReport verify_defining_system(const WeightedPair& p, int m,
                                            const ComplexMatrix& x,
                                            const ToleranceConfig& tol) {
  require_m(m);
  if (x.rows() != p.cols() || x.cols() != p.rows())
    throw ShapeError("X must be " + std::to_string(p.cols()) + "x" +
                     std::to_string(p.rows()) + ", got " + std::to_string(x.rows()) + "x" +
                     std::to_string(x.cols()));
  const ComplexMatrix& a = p.a();
  const ComplexMatrix& w = p.w();
  const ComplexMatrix wa = p.wa();
  const ComplexMatrix a_pinv = moore_penrose(a, p.tol());
  const ComplexMatrix wad = w * w_drazin(p);  // W A^{D,W}
  const ComplexMatrix wg = w_m_weak_group(p, m);

  // Reference scales keep the residuals meaningful when X or the target vanishes.
  const double x_scale = frobenius(wad * wa) * frobenius(x);
  const double ax_scale = frobenius(a) * frobenius(wad * wa * a_pinv);

  DefiningSystemReport r;
  r.fixed_point_residual = relative_difference(x, wad * wa * x, x_scale);
  r.image_residual = relative_difference(a * x, a * w * wg * wa * a_pinv, ax_scale);
  r.holds = r.fixed_point_residual <= tol.cmp_rel_tol && r.image_residual <= tol.cmp_rel_tol;

  const ComplexMatrix core = w_core_ep(p);
  // (A^{c,W})^{*m} W A^{*m} W A A^+ = A^{c,W} (W A^{c,W})^(m-1) (WA)^m W A A^+
  const ComplexMatrix ax_target =
      core * matrix_power(w * core, m - 1) * matrix_power(wa, m) * wa * a_pinv;
  r.characterization_residual = relative_difference(a * x, ax_target, ax_scale);

  // R(X) inside R(W A^{D,W}) = R((WA)^k): least-squares residual of X on that range.
  const SubspaceBasis range = power_range_basis(wa, p.k(), p.tol(), p.product_scale());
  const double x_norm = frobenius(x);
  r.range_residual = x_norm == 0.0 ? 0.0 : distance_from_subspace(x, range) / x_norm;
  r.characterization_holds = r.characterization_residual <= tol.cmp_rel_tol &&
                             r.range_residual <= tol.cmp_rel_tol;
  r.disagreement = r.holds != r.characterization_holds;
  return r;
}

}  // namespace ginv
