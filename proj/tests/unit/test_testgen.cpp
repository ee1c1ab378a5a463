#include "support.hpp"

#include "ginv/errors.hpp"
#include "ginv/testgen.hpp"
#include "ginv/weighted.hpp"
#include "ginv/wmwgmp.hpp"

using namespace ginv;
using ginv::test::rel;

namespace {

testgen::PairSpec spec_of(Index q, Index n, Index t, int k, std::uint64_t seed) {
  testgen::PairSpec s;
  s.q = q;
  s.n = n;
  s.t = t;
  s.target_k = k;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("full core gives a nonsingular pair") {
  const auto g = testgen::generate_pair(spec_of(4, 4, 4, 1, 3));
  const ComplexMatrix& a = g.pair.a();
  CHECK(std::abs(determinant(a)) > 1e-6);
  CHECK(std::abs(determinant(g.pair.w())) > 1e-6);
  CHECK(rel(wmwgmp(g.pair, 2).inverse, a.inverse()) < 1e-10);
  CHECK(rel(w_drazin(g.pair), (g.pair.w() * a * g.pair.w()).inverse()) < 1e-10);
}

TEST_CASE("empty core gives nilpotent products and a zero inverse") {
  const auto g = testgen::generate_pair(spec_of(5, 4, 0, 2, 8));
  const double scale = g.pair.product_scale();
  CHECK(matrix_power(g.pair.aw(), 2).norm() < 1e-12 * scale * scale);
  CHECK(matrix_power(g.pair.wa(), 2).norm() < 1e-12 * scale * scale);
  CHECK(g.pair.a().norm() > 0.1);
  CHECK(wmwgmp(g.pair, 1).inverse.norm() < 1e-12);
}

TEST_CASE("declared index is realized") {
  const auto g = testgen::generate_pair(spec_of(5, 4, 2, 2, 42));
  CHECK(g.pair.k() == 2);
  CHECK(g.declared_k == 2);

  std::mt19937_64 rng(1);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Index q = std::uniform_int_distribution<Index>(3, 12)(rng);
    const Index n = std::uniform_int_distribution<Index>(3, 12)(rng);
    const Index t = std::uniform_int_distribution<Index>(0, std::min(q, n))(rng);
    const int k_max = std::min(3, testgen::max_feasible_k(q, n, t));
    const int k = std::uniform_int_distribution<int>(1, k_max)(rng);
    const auto gp = testgen::generate_pair(spec_of(q, n, t, k, seed));
    CAPTURE(q);
    CAPTURE(n);
    CAPTURE(t);
    CHECK(gp.pair.k() == k);
    CHECK(power_range_basis(gp.pair.wa(), k, {}, gp.pair.product_scale()).dimension() == t);
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("generation is deterministic in the seed") {
  const auto s = spec_of(6, 5, 2, 3, 1234);
  const auto g1 = testgen::generate_pair(s);
  const auto g2 = testgen::generate_pair(s);
  CHECK((g1.pair.a().array() == g2.pair.a().array()).all());
  CHECK((g1.pair.w().array() == g2.pair.w().array()).all());
  const auto g3 = testgen::generate_pair(spec_of(6, 5, 2, 3, 1235));
  CHECK(rel(g1.pair.a(), g3.pair.a()) > 1e-3);
}

TEST_CASE("generated blocks assemble the pair") {
  const auto g = testgen::generate_pair(spec_of(7, 6, 3, 2, 5));
  CHECK(rel(g.ground_truth_blocks.assemble_a(), g.pair.a()) < 1e-14);
  CHECK(rel(g.ground_truth_blocks.assemble_w(), g.pair.w()) < 1e-14);
  const WeightedCoreEPDecomposition d = weighted_core_ep_decompose(g.pair, {});
  CHECK(rel(d.assemble_a(), g.pair.a()) <= 1e-10);
  CHECK(rel(d.assemble_w(), g.pair.w()) <= 1e-10);
}

TEST_CASE("leading blocks respect the condition cap") {
  auto s = spec_of(6, 6, 4, 1, 2);
  s.condition_cap = 3.0;
  const auto g = testgen::generate_pair(s);
  Eigen::JacobiSVD<ComplexMatrix> svd(g.ground_truth_blocks.a1);
  const auto& sv = svd.singularValues();
  CHECK(sv(0) <= 1.0 + 1e-12);
  CHECK(sv(sv.size() - 1) >= 1.0 / 3.0 - 1e-12);
}

TEST_CASE("infeasible specs are rejected") {
  CHECK(testgen::max_feasible_k(5, 4, 2) == 3);
  CHECK(testgen::max_feasible_k(4, 4, 2) == 2);
  CHECK(testgen::max_feasible_k(4, 4, 4) == 1);
  CHECK_THROWS_AS(testgen::generate_pair(spec_of(4, 4, 2, 3, 0)), ParameterError);
  CHECK_THROWS_AS(testgen::generate_pair(spec_of(4, 4, 5, 1, 0)), ParameterError);
  CHECK_THROWS_AS(testgen::generate_pair(spec_of(4, 4, 1, 0, 0)), ParameterError);
  auto s = spec_of(4, 4, 1, 1, 0);
  s.condition_cap = 0.5;
  CHECK_THROWS_AS(testgen::generate_pair(s), ParameterError);
}

TEST_CASE("nilpotent matrices") {
  CHECK(testgen::generate_nilpotent(3, 1, 7).norm() == 0.0);
  const ComplexMatrix n2 = testgen::generate_nilpotent(2, 2, 7);
  CHECK(n2.norm() > 0.1);
  CHECK((n2 * n2).norm() < 1e-12 * n2.norm() * n2.norm());
  const ComplexMatrix n4 = testgen::generate_nilpotent(4, 3, 9);
  const double s = n4.norm();
  CHECK(matrix_power(n4, 3).norm() < 1e-12 * s * s * s);
  CHECK(matrix_power(n4, 2).norm() > 1e-3 * s * s);
  CHECK_THROWS_AS(testgen::generate_nilpotent(3, 4, 0), ParameterError);
  CHECK_THROWS_AS(testgen::generate_nilpotent(3, 0, 0), ParameterError);
}

TEST_CASE("random unitary factors") {
  std::mt19937_64 rng(3);
  const ComplexMatrix u = testgen::random_unitary(6, rng);
  CHECK(rel(u.adjoint() * u, identity(6)) < 1e-13);
}
