#include "ginv/core_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ginv/errors.hpp"

namespace ginv {

namespace {

using Svd = Eigen::JacobiSVD<ComplexMatrix>;

double largest_singular_value(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Svd svd(a);
  return svd.singularValues()(0);
}

// Orthonormal basis of R(m), keeping singular directions above `threshold`.
ComplexMatrix range_basis_above(const ComplexMatrix& m, double threshold) {
  if (m.cols() == 0 || m.rows() == 0) return ComplexMatrix(m.rows(), 0);
  Svd svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Index r = 0;
  while (r < sv.size() && sv(r) > threshold) ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace

double ToleranceConfig::rank_tol_for(Index rows, Index cols) const {
  if (rank_rel_tol) return *rank_rel_tol;
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon() * 16.0;
}

void ToleranceConfig::validate() const {
  auto in_unit = [](double v) { return std::isfinite(v) && v > 0.0 && v < 1.0; };
  if (rank_rel_tol && !in_unit(*rank_rel_tol))
    throw ParameterError("rank tolerance must lie in (0, 1)");
  if (!in_unit(cmp_rel_tol))
    throw ParameterError("comparison tolerance must lie in (0, 1)");
}

void require_valid(const ComplexMatrix& a, std::string_view name) {
  if (a.rows() == 0 || a.cols() == 0)
    throw InvalidInputError(std::string(name) + ": empty matrix");
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
        throw InvalidInputError(std::string(name) + ": non-finite entry at (" +
                                std::to_string(i) + ", " + std::to_string(j) + ")");
}

void require_square(const ComplexMatrix& a, std::string_view name) {
  if (a.rows() != a.cols())
    throw ShapeError(std::string(name) + " must be square, got " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

double frobenius(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.norm(); }

double relative_difference(const ComplexMatrix& a, const ComplexMatrix& b, double scale) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return std::numeric_limits<double>::infinity();
  const double diff = frobenius(a - b);
  const double ref = std::max({frobenius(a), frobenius(b), scale});
  if (ref == 0.0) return diff;
  return diff / ref;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol,
                  double scale) {
  return relative_difference(a, b, scale) <= tol;
}

Index rank_of(const ComplexMatrix& a, const ToleranceConfig& tol, double scale) {
  require_valid(a, "A");
  if (a.size() == 0) return 0;
  Svd svd(a);
  const auto& sv = svd.singularValues();
  const double threshold = tol.rank_tol_for(a.rows(), a.cols()) * std::max(sv(0), scale);
  Index r = 0;
  while (r < sv.size() && sv(r) > threshold) ++r;
  return r;
}

double spectral_norm(const ComplexMatrix& a) { return largest_singular_value(a); }

ComplexMatrix moore_penrose(const ComplexMatrix& a, const ToleranceConfig& tol, double scale) {
  require_valid(a, "A");
  Svd svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double threshold = tol.rank_tol_for(a.rows(), a.cols()) * std::max(sv(0), scale);
  Index r = 0;
  while (r < sv.size() && sv(r) > threshold) ++r;
  const ComplexMatrix u = svd.matrixU().leftCols(r);
  const ComplexMatrix v = svd.matrixV().leftCols(r);
  const Eigen::VectorXd inv = sv.head(r).cwiseInverse();
  return v * inv.asDiagonal() * u.adjoint();
}

int index_of(const ComplexMatrix& a, const ToleranceConfig& tol, double scale) {
  require_valid(a, "A");
  require_square(a, "A");
  const Index n = a.rows();
  const double threshold = tol.rank_tol_for(n, n) * std::max(largest_singular_value(a), scale);
  ComplexMatrix basis = identity(n);
  Index previous = n;
  for (int j = 0; j <= n; ++j) {
    basis = range_basis_above(a * basis, threshold);
    if (basis.cols() == previous) return j;
    previous = basis.cols();
  }
  return static_cast<int>(n);
}

ComplexMatrix matrix_power(const ComplexMatrix& a, int p) {
  require_square(a, "A");
  if (p < 0) throw ParameterError("matrix power exponent must be nonnegative");
  ComplexMatrix out = identity(a.rows());
  for (int i = 0; i < p; ++i) out = out * a;
  return out;
}

namespace {

void require_conjugate_shapes(const ComplexMatrix& a, const ComplexMatrix& w) {
  if (w.rows() != a.cols() || w.cols() != a.rows())
    throw ShapeError("weight must be " + std::to_string(a.cols()) + "x" +
                     std::to_string(a.rows()) + " for a " + std::to_string(a.rows()) +
                     "x" + std::to_string(a.cols()) + " matrix, got " +
                     std::to_string(w.rows()) + "x" + std::to_string(w.cols()));
}

}  // namespace

ComplexMatrix star_power(const ComplexMatrix& a, const ComplexMatrix& w, int l) {
  require_conjugate_shapes(a, w);
  if (l < 1) throw ParameterError("star power exponent must be at least 1");
  ComplexMatrix out = a;
  for (int i = 1; i < l; ++i) out = out * (w * a);
  return out;
}

ComplexMatrix star_power_times_weight(const ComplexMatrix& a, const ComplexMatrix& w,
                                      int l) {
  require_conjugate_shapes(a, w);
  if (l < 0) throw ParameterError("star power exponent must be nonnegative");
  if (l == 0) return identity(a.rows());
  return matrix_power(a * w, l);
}

ComplexMatrix weight_times_star_power(const ComplexMatrix& w, const ComplexMatrix& a,
                                      int l) {
  require_conjugate_shapes(a, w);
  if (l < 0) throw ParameterError("star power exponent must be nonnegative");
  if (l == 0) return identity(a.cols());
  return matrix_power(w * a, l);
}

SubspaceBasis subspace_basis(const ComplexMatrix& a, SubspaceKind which,
                             const ToleranceConfig& tol, double scale) {
  require_valid(a, "A");
  Svd svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double threshold = tol.rank_tol_for(a.rows(), a.cols()) * std::max(sv(0), scale);
  Index r = 0;
  while (r < sv.size() && sv(r) > threshold) ++r;
  if (which == SubspaceKind::range) return {svd.matrixU().leftCols(r)};
  return {svd.matrixV().rightCols(a.cols() - r)};
}

SubspaceBasis power_range_basis(const ComplexMatrix& a, int p,
                                const ToleranceConfig& tol, double scale) {
  require_valid(a, "A");
  require_square(a, "A");
  if (p < 0) throw ParameterError("power must be nonnegative");
  const Index n = a.rows();
  const double threshold = tol.rank_tol_for(n, n) * std::max(largest_singular_value(a), scale);
  ComplexMatrix basis = identity(n);
  for (int j = 0; j < p; ++j) {
    basis = range_basis_above(a * basis, threshold);
    if (basis.cols() == 0) break;
  }
  return {basis};
}

SubspaceBasis orthogonal_complement(const SubspaceBasis& basis) {
  const Index n = basis.ambient();
  const Index d = basis.dimension();
  if (d == 0) return {identity(n)};
  Svd svd(basis.matrix, Eigen::ComputeFullU);
  return {svd.matrixU().rightCols(n - d)};
}

ComplexMatrix complete_to_unitary(const SubspaceBasis& basis) {
  const Index n = basis.ambient();
  ComplexMatrix u(n, n);
  u.leftCols(basis.dimension()) = basis.matrix;
  u.rightCols(n - basis.dimension()) = orthogonal_complement(basis).matrix;
  return u;
}

ComplexMatrix orthogonal_projector(const SubspaceBasis& basis) {
  if (basis.dimension() == 0)
    return ComplexMatrix::Zero(basis.ambient(), basis.ambient());
  return basis.matrix * basis.matrix.adjoint();
}

ComplexMatrix projector_onto_along(const SubspaceBasis& onto, const SubspaceBasis& along,
                                   const ToleranceConfig& tol) {
  const Index n = onto.ambient();
  if (along.ambient() != n)
    throw GeometryError("subspaces live in different ambient spaces");
  if (onto.dimension() + along.dimension() != n)
    throw GeometryError("dimensions " + std::to_string(onto.dimension()) + " + " +
                        std::to_string(along.dimension()) +
                        " do not add up to the ambient dimension " + std::to_string(n));
  if (along.dimension() == 0) return identity(n);
  if (onto.dimension() == 0) return ComplexMatrix::Zero(n, n);

  ComplexMatrix joined(n, n);
  joined << onto.matrix, along.matrix;
  if (rank_of(joined, tol) < n)
    throw GeometryError("subspaces intersect nontrivially");

  ComplexMatrix target = ComplexMatrix::Zero(n, n);
  target.leftCols(onto.dimension()) = onto.matrix;
  // P [T S] = [T 0]  =>  [T S]^* P^* = [T 0]^*
  return joined.adjoint().partialPivLu().solve(target.adjoint()).adjoint();
}

bool subspaces_equal(const SubspaceBasis& b1, const SubspaceBasis& b2,
                     const ToleranceConfig& tol) {
  if (b1.ambient() != b2.ambient()) return false;
  if (b1.dimension() != b2.dimension()) return false;
  const ComplexMatrix p1 = orthogonal_projector(b1);
  const ComplexMatrix p2 = orthogonal_projector(b2);
  return frobenius(p1 - p2) <=
         tol.cmp_rel_tol * std::max({frobenius(p1), frobenius(p2), 1.0});
}

double distance_from_subspace(const ComplexMatrix& x, const SubspaceBasis& basis) {
  if (basis.dimension() == 0) return frobenius(x);
  return frobenius(x - basis.matrix * (basis.matrix.adjoint() * x));
}

Complex determinant(const ComplexMatrix& a) {
  require_valid(a, "A");
  require_square(a, "A");
  return a.partialPivLu().determinant();
}

}  // namespace ginv
