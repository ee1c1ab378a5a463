#include "support.hpp"

#include "ginv/classical.hpp"
#include "ginv/errors.hpp"

using namespace ginv;
using ginv::test::mat;
using ginv::test::rel;

namespace {

// Oracle: Cline's representation with plain pseudo-inverses, valid for any
// l >= Ind(A); fine for the well-conditioned matrices used here.
ComplexMatrix cline_drazin(const ComplexMatrix& a, int l) {
  const ComplexMatrix al = matrix_power(a, l);
  return al * matrix_power(a, 2 * l + 1).completeOrthogonalDecomposition().pseudoInverse() * al;
}

ComplexMatrix pinv(const ComplexMatrix& a) {
  return a.completeOrthogonalDecomposition().pseudoInverse();
}

}  // namespace

TEST_CASE("Drazin inverse small examples") {
  const ToleranceConfig tol;
  std::mt19937_64 rng(1);
  const ComplexMatrix a = test::random_matrix(4, 4, rng) + 4.0 * identity(4);
  CHECK(rel(drazin(a, tol).inverse, a.inverse()) < 1e-12);
  CHECK(drazin(a, tol).index_used == 0);
  CHECK(drazin(mat({{0, 1}, {0, 0}}), tol).inverse.norm() == 0.0);
  CHECK(rel(drazin(mat({{2, 0}, {0, 0}}), tol).inverse, mat({{0.5, 0}, {0, 0}})) < 1e-14);
}

TEST_CASE("Drazin defining equations and Cline oracle") {
  const ToleranceConfig tol;
  std::mt19937_64 rng(2);
  for (const auto& blocks : {std::vector<int>{1}, {2}, {3, 1}, {2, 2, 1}}) {
    const ComplexMatrix a = test::with_index(blocks, 3, rng);
    const SquareInverseResult r = drazin(a, tol);
    const ComplexMatrix& x = r.inverse;
    const int k = r.index_used;
    CHECK(k == *std::max_element(blocks.begin(), blocks.end()));
    CHECK(rel(matrix_power(a, k + 1) * x, matrix_power(a, k)) < 1e-9);
    CHECK(rel(x * a * x, x) < 1e-9);
    CHECK(rel(a * x, x * a) < 1e-9);
    CHECK(rel(x, cline_drazin(a, k)) < 1e-8);
    // the oracle itself loses digits with the higher power
    CHECK(rel(x, cline_drazin(a, k + 1)) < 1e-6);
  }
}

TEST_CASE("group inverse") {
  const ToleranceConfig tol;
  CHECK(rel(group_inverse(identity(3), tol).inverse, identity(3)) < 1e-14);
  CHECK(rel(group_inverse(mat({{3, 0}, {0, 0}}), tol).inverse, mat({{1.0 / 3, 0}, {0, 0}})) < 1e-14);
  try {
    group_inverse(mat({{0, 1}, {0, 0}}), tol);
    FAIL("expected an index error");
  } catch (const IndexError& e) {
    CHECK(e.index() == 2);
  }
  std::mt19937_64 rng(3);
  const ComplexMatrix a = test::with_index({1, 1}, 3, rng);
  const ComplexMatrix x = group_inverse(a, tol).inverse;
  CHECK(rel(a * x * a, a) < 1e-10);
  CHECK(rel(x * a * x, x) < 1e-10);
  CHECK(rel(a * x, x * a) < 1e-10);
}

TEST_CASE("core-EP inverse") {
  const ToleranceConfig tol;
  std::mt19937_64 rng(4);
  const ComplexMatrix a = test::random_matrix(3, 3, rng) + 3.0 * identity(3);
  CHECK(rel(core_ep(a, tol).inverse, a.inverse()) < 1e-12);
  CHECK(core_ep(test::with_index({3, 2}, 0, rng), tol).inverse.norm() < 1e-12);
  // A idempotent so A^D = A and A^core-EP = A A (A)^+ = [[1, 0], [0, 0]].
  CHECK(rel(core_ep(mat({{1, 1}, {0, 0}}), tol).inverse, mat({{1, 0}, {0, 0}})) < 1e-14);

  // Oracle A^D A^l (A^l)^+ for l in {k, k+1, k+2}.
  const ComplexMatrix b = test::with_index({2, 1}, 3, rng);
  const SquareInverseResult r = core_ep(b, tol);
  const ComplexMatrix bd = cline_drazin(b, 2);
  for (int l = r.index_used; l <= r.index_used + 2; ++l) {
    const ComplexMatrix bl = matrix_power(b, l);
    CHECK(rel(r.inverse, bd * bl * pinv(bl)) < 1e-8);
  }
  CHECK(rel(r.inverse * b * r.inverse, r.inverse) < 1e-9);
}

TEST_CASE("m-weak group inverse") {
  const ToleranceConfig tol;
  std::mt19937_64 rng(5);
  const ComplexMatrix a = test::random_matrix(3, 3, rng) + 3.0 * identity(3);
  CHECK(rel(m_weak_group(a, 2, tol).inverse, a.inverse()) < 1e-12);
  // (A^core-EP)^2 A with A^core-EP = [[1, 0], [0, 0]].
  CHECK(rel(m_weak_group(mat({{1, 1}, {0, 0}}), 1, tol).inverse, mat({{1, 1}, {0, 0}})) < 1e-14);
  CHECK_THROWS_AS(m_weak_group(a, 0, tol), ParameterError);

  const ComplexMatrix b = test::with_index({3, 1}, 2, rng);
  const ComplexMatrix c = core_ep(b, tol).inverse;
  CHECK(rel(m_weak_group(b, 1, tol).inverse, c * c * b) < 1e-9);
  for (int m = 3; m <= 5; ++m)
    CHECK(rel(m_weak_group(b, m, tol).inverse, drazin(b, tol).inverse) < 1e-8);
  CHECK(rel(m_weak_group(b, 2, tol).inverse, drazin(b, tol).inverse) > 1e-6);
  for (int m = 1; m <= 4; ++m) {
    const ComplexMatrix x = m_weak_group(b, m, tol).inverse;
    CHECK(rel(x * b * x, x) < 1e-9);
  }
}

TEST_CASE("DMP inverse") {
  const ToleranceConfig tol;
  std::mt19937_64 rng(6);
  const ComplexMatrix a = test::random_matrix(3, 3, rng) + 3.0 * identity(3);
  CHECK(rel(dmp(a, tol).inverse, a.inverse()) < 1e-12);
  CHECK(dmp(mat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}), tol).inverse.norm() == 0.0);
  CHECK(rel(dmp(mat({{2, 0}, {0, 0}}), tol).inverse, mat({{0.5, 0}, {0, 0}})) < 1e-14);
  const ComplexMatrix b = test::with_index({2, 2}, 2, rng);
  CHECK(rel(dmp(b, tol).inverse, cline_drazin(b, 2) * b * pinv(b)) < 1e-8);
}

TEST_CASE("m-weak group MP inverse") {
  const ToleranceConfig tol;
  std::mt19937_64 rng(7);
  const ComplexMatrix a = test::random_matrix(4, 4, rng) + 4.0 * identity(4);
  CHECK(rel(m_weak_group_mp(a, 1, tol).inverse, a.inverse()) < 1e-12);
  CHECK(m_weak_group_mp(ComplexMatrix::Zero(3, 3), 2, tol).inverse.norm() == 0.0);
  CHECK_THROWS_AS(m_weak_group_mp(a, 0, tol), ParameterError);
  const ComplexMatrix b = test::with_index({3}, 2, rng);
  for (int m = 1; m <= 4; ++m) {
    const SquareInverseResult r = m_weak_group_mp(b, m, tol);
    CHECK(r.m_used == m);
    CHECK(rel(r.inverse, m_weak_group(b, m, tol).inverse * b * pinv(b)) < 1e-8);
    CHECK(rel(r.inverse * b * r.inverse, r.inverse) < 1e-9);
  }
}

TEST_CASE("classical inverses reject rectangular input") {
  const ToleranceConfig tol;
  CHECK_THROWS_AS(drazin(ComplexMatrix::Zero(2, 3), tol), ShapeError);
  CHECK_THROWS_AS(core_ep(ComplexMatrix::Zero(3, 2), tol), ShapeError);
}
