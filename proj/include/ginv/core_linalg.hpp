#pragma once

#include <complex>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace ginv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Tolerances governing every floating-point decision in the library.
///
/// `rank_rel_tol` is relative to the largest singular value of the matrix
/// whose rank is being decided, or to a caller-supplied reference scale when
/// that is larger (see the `scale` parameters below). When unset, the default is
/// max(rows, cols) * machine epsilon * 16, evaluated per matrix.
/// `cmp_rel_tol` is the relative Frobenius threshold for "equal" checks.
struct ToleranceConfig {
  std::optional<double> rank_rel_tol;
  double cmp_rel_tol = 1e-8;

  double rank_tol_for(Index rows, Index cols) const;

  // Throws ParameterError unless both tolerances lie in (0, 1).
  void validate() const;
};

enum class SubspaceKind { range, nullspace };

/// Orthonormal basis stored column-wise. A zero-dimensional subspace is a
/// matrix with `ambient()` rows and no columns.
struct SubspaceBasis {
  ComplexMatrix matrix;

  Index dimension() const { return matrix.cols(); }
  Index ambient() const { return matrix.rows(); }
};

// Rejects empty matrices and non-finite entries.
void require_valid(const ComplexMatrix& a, std::string_view name);
void require_square(const ComplexMatrix& a, std::string_view name);

ComplexMatrix identity(Index n);
double frobenius(const ComplexMatrix& a);

/// ||a - b||_F <= tol * max(||a||_F, ||b||_F, scale)
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol,
                  double scale = 0.0);

/// ||a - b||_F / max(||a||_F, ||b||_F, scale); 0 when everything vanishes.
double relative_difference(const ComplexMatrix& a, const ComplexMatrix& b,
                           double scale = 0.0);

// Rank decisions below drop singular values under
//   rank_rel_tol * max(sigma_max(A), scale).
// Products such as AW pass the product of their factor norms as `scale`: a
// product that vanishes in exact arithmetic is pure rounding noise, and noise
// measured against itself looks full rank.

Index rank_of(const ComplexMatrix& a, const ToleranceConfig& tol, double scale = 0.0);

ComplexMatrix moore_penrose(const ComplexMatrix& a, const ToleranceConfig& tol,
                            double scale = 0.0);

/// Spectral norm (largest singular value); 0 for empty matrices.
double spectral_norm(const ComplexMatrix& a);

/// Smallest k >= 0 with rank(A^k) = rank(A^(k+1)). Ranks of the powers are
/// tracked through re-orthogonalized bases of R(A^j), with the threshold
/// taken against sigma_max(A) rather than against each power.
int index_of(const ComplexMatrix& a, const ToleranceConfig& tol, double scale = 0.0);

/// A^p for square A, p >= 0, by repeated multiplication.
ComplexMatrix matrix_power(const ComplexMatrix& a, int p);

/// A^{*l} = A (W A)^{l-1} for l >= 1, A q x n and W n x q.
ComplexMatrix star_power(const ComplexMatrix& a, const ComplexMatrix& w, int l);

/// A^{*l} W, with the convention A^{*0} W = I_q.
ComplexMatrix star_power_times_weight(const ComplexMatrix& a, const ComplexMatrix& w,
                                      int l);

/// W A^{*l}, with the convention W A^{*0} = I_n.
ComplexMatrix weight_times_star_power(const ComplexMatrix& w, const ComplexMatrix& a,
                                      int l);

SubspaceBasis subspace_basis(const ComplexMatrix& a, SubspaceKind which,
                             const ToleranceConfig& tol, double scale = 0.0);

/// Orthonormal basis of R(A^p) built one factor at a time, re-orthogonalizing
/// after every multiplication. p = 0 yields the whole space.
SubspaceBasis power_range_basis(const ComplexMatrix& a, int p,
                                const ToleranceConfig& tol, double scale = 0.0);

/// Orthonormal basis of the orthogonal complement of span(basis).
SubspaceBasis orthogonal_complement(const SubspaceBasis& basis);

/// Unitary matrix whose leading columns are exactly `basis.matrix`.
ComplexMatrix complete_to_unitary(const SubspaceBasis& basis);

ComplexMatrix orthogonal_projector(const SubspaceBasis& basis);

/// Oblique projector onto T along S. Throws GeometryError when T and S are
/// not complementary in the common ambient space.
ComplexMatrix projector_onto_along(const SubspaceBasis& onto, const SubspaceBasis& along,
                                   const ToleranceConfig& tol = {});

bool subspaces_equal(const SubspaceBasis& b1, const SubspaceBasis& b2,
                     const ToleranceConfig& tol);

/// ||(I - QQ*) X||_F: how far the columns of X stick out of span(Q).
double distance_from_subspace(const ComplexMatrix& x, const SubspaceBasis& basis);

Complex determinant(const ComplexMatrix& a);

}  // namespace ginv
