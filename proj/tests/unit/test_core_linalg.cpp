#include "support.hpp"

#include <cmath>
#include <limits>

#include "ginv/errors.hpp"
#include "ginv/testgen.hpp"

using namespace ginv;
using ginv::test::mat;
using ginv::test::rel;

TEST_CASE("rank of small examples") {
  const ToleranceConfig tol;
  CHECK(rank_of(identity(3), tol) == 3);
  CHECK(rank_of(ComplexMatrix::Zero(2, 4), tol) == 0);
  ToleranceConfig loose;
  loose.rank_rel_tol = 1e-12;
  CHECK(rank_of(mat({{1, 0}, {0, 1e-300}}), loose) == 1);
}

TEST_CASE("non-finite entries are rejected") {
  ComplexMatrix a = identity(2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(rank_of(a, {}), InvalidInputError);
  a(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(moore_penrose(a, {}), InvalidInputError);
}

TEST_CASE("tolerance configuration is validated") {
  ToleranceConfig t;
  t.cmp_rel_tol = 0.0;
  CHECK_THROWS_AS(t.validate(), ParameterError);
  t.cmp_rel_tol = 1e-8;
  t.rank_rel_tol = 1.5;
  CHECK_THROWS_AS(t.validate(), ParameterError);
  ToleranceConfig d;
  CHECK(d.rank_tol_for(10, 8) == doctest::Approx(10 * 16 * std::numeric_limits<double>::epsilon()));
}

TEST_CASE("Moore-Penrose small examples") {
  const ToleranceConfig tol;
  CHECK(rel(moore_penrose(mat({{2, 0}, {0, 0}}), tol), mat({{0.5, 0}, {0, 0}})) < 1e-14);
  CHECK(rel(moore_penrose(identity(4), tol), identity(4)) < 1e-14);
  CHECK(rel(moore_penrose(mat({{1, 1}}), tol), mat({{0.5}, {0.5}})) < 1e-14);
}

TEST_CASE("Moore-Penrose satisfies the Penrose equations on random matrices") {
  std::mt19937_64 rng(7);
  const ToleranceConfig tol;
  for (int trial = 0; trial < 20; ++trial) {
    const Index r = 1 + trial % 6;
    const ComplexMatrix a = test::random_rank(10, 8, r, rng);
    const ComplexMatrix x = moore_penrose(a, tol);
    CHECK(rel(a * x * a, a) <= 1e-10);
    CHECK(rel(x * a * x, x) <= 1e-10);
    CHECK(rel((a * x).adjoint(), a * x) <= 1e-10);
    CHECK(rel((x * a).adjoint(), x * a) <= 1e-10);
    CHECK(rank_of(a, tol) == r);
    CHECK(rank_of(a.adjoint(), tol) == r);
    CHECK(rank_of(x, tol) == r);
  }
}

TEST_CASE("index of small examples") {
  const ToleranceConfig tol;
  CHECK(index_of(identity(3), tol) == 0);
  CHECK(index_of(mat({{0, 1}, {0, 0}}), tol) == 2);
  CHECK(index_of(mat({{1, 0}, {0, 0}}), tol) == 1);
  CHECK(index_of(ComplexMatrix::Zero(3, 3), tol) == 1);
  CHECK_THROWS_AS(index_of(ComplexMatrix::Zero(2, 3), tol), ShapeError);
}

TEST_CASE("index of similarity-transformed Jordan structures") {
  std::mt19937_64 rng(11);
  const ToleranceConfig tol;
  CHECK(index_of(test::with_index({3, 1}, 2, rng), tol) == 3);
  CHECK(index_of(test::with_index({2, 2}, 3, rng), tol) == 2);
  CHECK(index_of(test::with_index({1, 1}, 4, rng), tol) == 1);
  for (int index = 1; index <= 4; ++index)
    CHECK(index_of(testgen::generate_nilpotent(5, index, 100 + index), tol) == index);
}

TEST_CASE("a reference scale keeps rounding noise from counting as rank") {
  const ToleranceConfig tol;
  ComplexMatrix noise = ComplexMatrix::Zero(3, 3);
  noise(0, 0) = 1e-17;
  noise(1, 2) = 2e-17;
  CHECK(rank_of(noise, tol) == 2);
  CHECK(rank_of(noise, tol, 1.0) == 0);
  CHECK(index_of(noise, tol, 1.0) == 1);
  CHECK(frobenius(moore_penrose(noise, tol, 1.0)) == 0.0);
}

TEST_CASE("star powers") {
  const ComplexMatrix a = mat({{2}});
  const ComplexMatrix w = mat({{3}});
  CHECK(rel(star_power(a, w, 2), mat({{12}})) < 1e-15);
  CHECK(rel(star_power(identity(3), identity(3), 3), identity(3)) < 1e-15);

  std::mt19937_64 rng(3);
  const ComplexMatrix ar = test::random_matrix(4, 3, rng);
  const ComplexMatrix wr = test::random_matrix(3, 4, rng);
  CHECK(rel(star_power(ar, wr, 1), ar) == 0.0);
  ComplexMatrix expected = ar;
  for (int l = 2; l <= 5; ++l) {
    expected = expected * wr * ar;
    CHECK(rel(star_power(ar, wr, l), expected) < 1e-13);
  }
  // The two zeroth-power conventions.
  CHECK(rel(star_power_times_weight(ar, wr, 0), identity(4)) == 0.0);
  CHECK(rel(weight_times_star_power(wr, ar, 0), identity(3)) == 0.0);
  CHECK(rel(star_power_times_weight(ar, wr, 2), ar * wr * ar * wr) < 1e-13);
  CHECK(rel(weight_times_star_power(wr, ar, 2), wr * ar * wr * ar) < 1e-13);
  CHECK_THROWS_AS(star_power(ar, ar, 1), ShapeError);
}

TEST_CASE("subspace bases") {
  const ToleranceConfig tol;
  const SubspaceBasis r = subspace_basis(mat({{1, 0}, {0, 0}}), SubspaceKind::range, tol);
  CHECK(r.dimension() == 1);
  CHECK(subspaces_equal(r, SubspaceBasis{mat({{1}, {0}})}, tol));
  CHECK(subspace_basis(identity(3), SubspaceKind::nullspace, tol).dimension() == 0);
  const SubspaceBasis nb = subspace_basis(mat({{1, 1}}), SubspaceKind::nullspace, tol);
  CHECK(nb.dimension() == 1);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(subspaces_equal(nb, SubspaceBasis{mat({{s}, {-s}})}, tol));

  std::mt19937_64 rng(5);
  const ComplexMatrix a = test::random_rank(6, 5, 3, rng);
  const SubspaceBasis range = subspace_basis(a, SubspaceKind::range, tol);
  const SubspaceBasis null = subspace_basis(a, SubspaceKind::nullspace, tol);
  CHECK(range.dimension() == 3);
  CHECK(null.dimension() == 2);
  CHECK(rel(range.matrix.adjoint() * range.matrix, identity(3)) < 1e-12);
  CHECK((a * null.matrix).norm() < 1e-12 * a.norm());
  CHECK(distance_from_subspace(a, range) < 1e-12 * a.norm());
}

TEST_CASE("power range basis tracks R(A^p)") {
  std::mt19937_64 rng(13);
  const ToleranceConfig tol;
  const ComplexMatrix a = test::with_index({3, 2}, 2, rng);
  CHECK(power_range_basis(a, 0, tol).dimension() == 7);
  CHECK(power_range_basis(a, 1, tol).dimension() == 5);
  CHECK(power_range_basis(a, 2, tol).dimension() == 3);
  CHECK(power_range_basis(a, 3, tol).dimension() == 2);
  CHECK(subspaces_equal(power_range_basis(a, 3, tol),
                        subspace_basis(matrix_power(a, 3), SubspaceKind::range, tol), tol));
}

TEST_CASE("orthogonal complement and unitary completion") {
  std::mt19937_64 rng(17);
  const ToleranceConfig tol;
  const SubspaceBasis b = subspace_basis(test::random_rank(5, 5, 2, rng), SubspaceKind::range, tol);
  const SubspaceBasis c = orthogonal_complement(b);
  CHECK(c.dimension() == 3);
  CHECK((b.matrix.adjoint() * c.matrix).norm() < 1e-12);
  const ComplexMatrix u = complete_to_unitary(b);
  CHECK(rel(u.adjoint() * u, identity(5)) < 1e-12);
  CHECK(rel(u.leftCols(2), b.matrix) == 0.0);
  CHECK(rel(orthogonal_projector(b) + orthogonal_projector(c), identity(5)) < 1e-12);
}

TEST_CASE("oblique projectors") {
  const ToleranceConfig tol;
  const SubspaceBasis e1{mat({{1}, {0}})};
  const SubspaceBasis e2{mat({{0}, {1}})};
  CHECK(rel(projector_onto_along(e1, e2, tol), mat({{1, 0}, {0, 0}})) < 1e-14);
  CHECK(rel(projector_onto_along(SubspaceBasis{identity(2)}, SubspaceBasis{ComplexMatrix(2, 0)}, tol),
            identity(2)) < 1e-14);
  const double s = 1.0 / std::sqrt(2.0);
  const SubspaceBasis diag{mat({{s}, {s}})};
  // Oracle: P [e1 | v] = [e1 | 0] gives P = [[1, -1], [0, 0]].
  CHECK(rel(projector_onto_along(e1, diag, tol), mat({{1, -1}, {0, 0}})) < 1e-14);
  CHECK_THROWS_AS(projector_onto_along(e1, e1, tol), GeometryError);
  CHECK_THROWS_AS(projector_onto_along(e1, SubspaceBasis{identity(2)}, tol), GeometryError);

  std::mt19937_64 rng(19);
  const SubspaceBasis t = subspace_basis(test::random_rank(6, 6, 4, rng), SubspaceKind::range, tol);
  const SubspaceBasis sp = subspace_basis(test::random_rank(6, 6, 2, rng), SubspaceKind::range, tol);
  const ComplexMatrix p = projector_onto_along(t, sp, tol);
  CHECK(rel(p * p, p) < 1e-10);
  CHECK(rel(p * t.matrix, t.matrix) < 1e-10);
  CHECK((p * sp.matrix).norm() < 1e-10);
}

TEST_CASE("subspace equality") {
  const ToleranceConfig tol;
  const SubspaceBasis e1{mat({{1}, {0}})};
  const SubspaceBasis e2{mat({{0}, {1}})};
  CHECK(subspaces_equal(e1, e1, tol));
  CHECK_FALSE(subspaces_equal(e1, e2, tol));
  const SubspaceBasis a = subspace_basis(mat({{1}, {1}}), SubspaceKind::range, tol);
  const SubspaceBasis b = subspace_basis(mat({{2}, {2}}), SubspaceKind::range, tol);
  CHECK(subspaces_equal(a, b, tol));
}

TEST_CASE("determinant") {
  CHECK(std::abs(determinant(identity(4)) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(determinant(mat({{2, 0}, {0, 3}})) - Complex(6.0)) < 1e-14);
  CHECK(std::abs(determinant(mat({{0, 1}, {1, 0}})) - Complex(-1.0)) < 1e-15);
  CHECK_THROWS_AS(determinant(ComplexMatrix::Zero(2, 3)), ShapeError);
}

TEST_CASE("relative difference") {
  CHECK(relative_difference(mat({{1}}), mat({{1}})) == 0.0);
  CHECK(relative_difference(mat({{2}}), mat({{1}})) == doctest::Approx(0.5));
  CHECK(relative_difference(mat({{1e-20}}), mat({{0}}), 1.0) == doctest::Approx(1e-20));
  CHECK(approx_equal(mat({{1}}), mat({{1 + 1e-12}}), 1e-10));
}
