#include "ginv/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ginv/errors.hpp"
#include "ginv/wmwgmp.hpp"

namespace ginv {

namespace {

void require_rows(const ComplexMatrix& m, Index rows, const char* name) {
  if (m.rows() != rows || m.cols() == 0)
    throw ShapeError(std::string(name) + " must have " + std::to_string(rows) +
                     " rows and at least one column, got " + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()));
}

}  // namespace

double objective_wg(const WeightedPair& p, int m, const ComplexMatrix& b,
                    const ComplexMatrix& x) {
  const ComplexMatrix wa = p.wa();
  // W A^{*(m+1)} W X - W A^{*m} B = (WA)^(m+1) W X - (WA)^m B
  const ComplexMatrix wa_m = matrix_power(wa, m);
  return frobenius(wa_m * wa * p.w() * x - wa_m * b);
}

double objective_wmwgmp(const WeightedPair& p, int m, const ComplexMatrix& b,
                        const ComplexMatrix& x) {
  const ComplexMatrix wa_m1 = matrix_power(p.wa(), m + 1);
  return frobenius(wa_m1 * x - wa_m1 * moore_penrose(p.a(), p.tol()) * b);
}

ConstrainedSolveResult solve_constrained_wg(const WeightedPair& p, int m,
                                            const ComplexMatrix& b) {
  require_valid(b, "B");
  require_rows(b, p.cols(), "B");
  ConstrainedSolveResult r;
  r.x = w_m_weak_group(p, m) * b;
  r.residual_frobenius = objective_wg(p, m, b, r.x);
  r.constraint_residual =
      distance_from_subspace(r.x, power_range_basis(p.aw(), p.k(), p.tol(), p.product_scale()));
  return r;
}

ConstrainedSolveResult solve_constrained_wmwgmp(const WeightedPair& p, int m,
                                                const ComplexMatrix& b) {
  require_valid(b, "B");
  require_rows(b, p.rows(), "B");
  ConstrainedSolveResult r;
  r.x = wmwgmp(p, m).inverse * b;
  r.residual_frobenius = objective_wmwgmp(p, m, b, r.x);
  r.constraint_residual =
      distance_from_subspace(r.x, power_range_basis(p.wa(), p.k(), p.tol(), p.product_scale()));
  return r;
}

ComplexMatrix general_solution(const WeightedPair& p, int m, const ComplexMatrix& b,
                               const ComplexMatrix& z) {
  require_valid(b, "B");
  require_rows(b, p.rows(), "B");
  require_rows(z, p.cols(), "Z");
  if (z.cols() != b.cols())
    throw ShapeError("Z must have as many columns as B (" + std::to_string(b.cols()) + ")");
  const ComplexMatrix x = wmwgmp(p, m).inverse;
  return x * b + (identity(p.cols()) - x * p.a()) * z;
}

double equation_residual(const WeightedPair& p, int m, const ComplexMatrix& b,
                         const ComplexMatrix& x) {
  const ComplexMatrix wa = p.wa();
  const ComplexMatrix h = matrix_power(wa, p.k()).adjoint() * matrix_power(wa, m + 1);
  const ComplexMatrix pinv_b = moore_penrose(p.a(), p.tol()) * b;
  // ||H|| itself is rounding noise when (WA)^k vanishes, so normalize by the factor norms.
  const double scale = std::pow(p.product_scale(), p.k() + m + 1) *
                       std::max(frobenius(x), frobenius(pinv_b));
  return relative_difference(h * x, h * pinv_b, scale);
}

BorderingData build_bordering_E(const WeightedPair& p, int m, const ToleranceConfig& tol) {
  if (m < 1) throw ParameterError("m must be a positive integer, got " + std::to_string(m));
  const Index n = p.cols();
  const ComplexMatrix wa = p.wa();
  const ComplexMatrix wak = matrix_power(wa, p.k());
  const ComplexMatrix wa_m1 = matrix_power(wa, m + 1);
  const ComplexMatrix h = wak.adjoint() * wa_m1;

  BorderingData d;
  const SubspaceBasis core = power_range_basis(wa, p.k(), tol, p.product_scale());
  d.t = core.dimension();
  d.ga = wak * h;

  // N(((WA)^k)^* (WA)^(m+1)), with rank decided against the factor norms.
  Eigen::JacobiSVD<ComplexMatrix> svd(h, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double scale = std::max(sv(0), std::pow(p.product_scale(), p.k() + m + 1));
  const double threshold = tol.rank_tol_for(n, n) * scale;
  Index r = 0;
  while (r < sv.size() && sv(r) > threshold) ++r;
  if (r != d.t)
    throw BorderingError("rank of ((WA)^k)^*(WA)^(m+1) is " + std::to_string(r) +
                         " but rank((WA)^k) is " + std::to_string(d.t));

  d.v = svd.matrixV().rightCols(n - r);
  d.u = orthogonal_complement(core).matrix.adjoint();
  if (d.t == n) {
    d.e = ComplexMatrix::Zero(n, n);
    return d;
  }
  const ComplexMatrix uv = d.u * d.v;
  Eigen::JacobiSVD<ComplexMatrix> uv_svd(uv);
  const auto& uv_sv = uv_svd.singularValues();
  if (uv_sv(uv_sv.size() - 1) <= tol.rank_tol_for(n, n))
    throw BorderingError("U V is singular; the bordering subspaces are not complementary");
  d.e = d.v * uv.partialPivLu().solve(d.u);
  return d;
}

ComplexMatrix cramer_solve(const WeightedPair& p, int m, const ComplexMatrix& b,
                           const CramerOptions& options) {
  require_valid(b, "B");
  require_rows(b, p.rows(), "B");
  const Index n = p.cols();
  if (n > options.max_n)
    throw CapacityError("Cramer's rule is limited to n <= " + std::to_string(options.max_n) +
                        ", got n = " + std::to_string(n));

  const BorderingData bordering = build_bordering_E(p, m, p.tol());
  const ComplexMatrix system = bordering.ga + bordering.e;
  const ComplexMatrix pinv_b = moore_penrose(p.a(), p.tol()) * b;
  const ComplexMatrix wa = p.wa();
  const ComplexMatrix h = matrix_power(wa, p.k()).adjoint() * matrix_power(wa, m + 1);
  const ComplexMatrix rhs = options.rhs == CramerRhs::bordered
                                ? ComplexMatrix(matrix_power(wa, p.k()) * h * pinv_b)
                                : ComplexMatrix(h * pinv_b);

  const Complex denominator = determinant(system);
  if (denominator == Complex(0.0))
    throw BorderingError("bordered system GA + E is singular");

  ComplexMatrix x(n, b.cols());
  ComplexMatrix replaced = system;
  for (Index j = 0; j < b.cols(); ++j) {
    for (Index i = 0; i < n; ++i) {
      replaced.col(i) = rhs.col(j);
      x(i, j) = determinant(replaced) / denominator;
      replaced.col(i) = system.col(i);
    }
  }
  return x;
}

}  // namespace ginv
