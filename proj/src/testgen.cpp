#include "ginv/testgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ginv/errors.hpp"

namespace ginv::testgen {

namespace {

constexpr int kMaxAttempts = 8;

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 step, so neighbouring seeds give unrelated streams
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Block-diagonal shift pattern of order `size`: a leading Jordan block of
// size `index`, the rest filled with blocks no larger than `index`.
ComplexMatrix shift_pattern(Index size, int index, std::mt19937_64& rng) {
  ComplexMatrix j = ComplexMatrix::Zero(size, size);
  Index start = 0;
  int block = index;
  while (start < size) {
    const Index len = std::min<Index>(block, size - start);
    for (Index i = 0; i + 1 < len; ++i) j(start + i, start + i + 1) = 1.0;
    start += len;
    std::uniform_int_distribution<int> pick(1, index);
    block = pick(rng);
  }
  return j;
}

struct TrailingBlocks {
  ComplexMatrix a3;  // p x s
  ComplexMatrix w3;  // s x p
};

// A3 W3 and W3 A3 nilpotent with max index `kappa`, before similarity mixing.
TrailingBlocks trailing_pattern(Index p, Index s, int kappa, std::mt19937_64& rng) {
  TrailingBlocks b{ComplexMatrix::Zero(p, s), ComplexMatrix::Zero(s, p)};
  const Index r = std::min(p, s);
  if (kappa == 1) {
    if (p >= 2 && s >= 2) {
      // Rank-one pieces whose products vanish both ways.
      b.a3(0, 0) = 1.0;
      b.w3(1, 1) = 1.0;
    } else if (p >= 1 && s >= 1) {
      b.w3 = random_gaussian(s, p, rng);
    }
    return b;
  }
  if (kappa <= r) {
    b.w3.topLeftCorner(r, r) = identity(r);
    b.a3.topLeftCorner(r, r) = shift_pattern(r, kappa, rng);
    return b;
  }
  // kappa == r + 1 with p != s: the longer side carries a Jordan block of size r + 1.
  if (p > s) {
    b.a3.topLeftCorner(s, s) = identity(s);
    b.w3.block(0, 1, s, s) = identity(s);
  } else {
    b.w3.topLeftCorner(p, p) = identity(p);
    b.a3.block(0, 1, p, p) = identity(p);
  }
  return b;
}

ComplexMatrix assemble(const ComplexMatrix& outer, const ComplexMatrix& b11,
                       const ComplexMatrix& b12, const ComplexMatrix& b22,
                       const ComplexMatrix& inner) {
  const Index t = b11.rows();
  ComplexMatrix mid = ComplexMatrix::Zero(outer.cols(), inner.cols());
  mid.topLeftCorner(t, t) = b11;
  mid.topRightCorner(t, b12.cols()) = b12;
  mid.bottomRightCorner(b22.rows(), b22.cols()) = b22;
  return outer * mid * inner.adjoint();
}

}  // namespace

ComplexMatrix random_gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

ComplexMatrix random_unitary(Index n, std::mt19937_64& rng) {
  if (n == 0) return ComplexMatrix(0, 0);
  const ComplexMatrix g = random_gaussian(n, n, rng);
  const Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  // Fix the phases so that R has a positive real diagonal.
  for (Index i = 0; i < n; ++i) {
    const Complex r = qr.matrixQR()(i, i);
    const double mag = std::abs(r);
    if (mag > 0.0) q.col(i) *= r / mag;
  }
  return q;
}

ComplexMatrix random_conditioned(Index n, double condition_cap, std::mt19937_64& rng) {
  if (n == 0) return ComplexMatrix(0, 0);
  std::uniform_real_distribution<double> uniform(1.0 / condition_cap, 1.0);
  Eigen::VectorXd sv(n);
  for (Index i = 0; i < n; ++i) sv(i) = uniform(rng);
  const ComplexMatrix u = random_unitary(n, rng);
  const ComplexMatrix v = random_unitary(n, rng);
  return u * sv.asDiagonal() * v.adjoint();
}

int max_feasible_k(Index q, Index n, Index t) {
  const Index p = q - t;
  const Index s = n - t;
  const Index r = std::min(p, s);
  if (p == s) return static_cast<int>(std::max<Index>(r, 1));
  return static_cast<int>(r + 1);
}

ComplexMatrix generate_nilpotent(Index size, int index, std::uint64_t seed) {
  if (size < 1) throw ParameterError("nilpotent size must be positive");
  if (index < 1 || index > size)
    throw ParameterError("nilpotent index " + std::to_string(index) +
                         " must lie in [1, " + std::to_string(size) + "]");
  std::mt19937_64 rng(sub_seed(seed, 0));
  const ComplexMatrix j = shift_pattern(size, index, rng);
  const ComplexMatrix s = random_conditioned(size, 2.0, rng);
  return s * j * s.partialPivLu().inverse();
}

GeneratedPair generate_pair(const PairSpec& spec, const ToleranceConfig& tol) {
  if (spec.q < 1 || spec.n < 1) throw ParameterError("q and n must be positive");
  if (spec.t < 0 || spec.t > std::min(spec.q, spec.n))
    throw ParameterError("core size t must lie in [0, min(q, n)]");
  if (!(spec.condition_cap >= 1.0)) throw ParameterError("condition cap must be >= 1");
  const int k_max = max_feasible_k(spec.q, spec.n, spec.t);
  if (spec.target_k < 1 || spec.target_k > k_max)
    throw ParameterError("target k = " + std::to_string(spec.target_k) +
                         " is infeasible for q = " + std::to_string(spec.q) +
                         ", n = " + std::to_string(spec.n) + ", t = " +
                         std::to_string(spec.t) + " (max " + std::to_string(k_max) + ")");

  const Index q = spec.q;
  const Index n = spec.n;
  const Index t = spec.t;
  const Index p = q - t;
  const Index s = n - t;

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::mt19937_64 rng(sub_seed(spec.seed, static_cast<std::uint64_t>(attempt)));

    WeightedCoreEPDecomposition blocks;
    blocks.t = t;
    blocks.u = random_unitary(q, rng);
    blocks.v = random_unitary(n, rng);
    blocks.a1 = random_conditioned(t, spec.condition_cap, rng);
    blocks.w1 = random_conditioned(t, spec.condition_cap, rng);
    const double off_scale = 0.5 / std::sqrt(static_cast<double>(std::max<Index>(t, 1)));
    blocks.a2 = off_scale * random_gaussian(t, s, rng);
    blocks.w2 = off_scale * random_gaussian(t, p, rng);

    TrailingBlocks trail = trailing_pattern(p, s, spec.target_k, rng);
    // Similarity mixing keeps the nilpotency indices of both products.
    const ComplexMatrix mix_p = random_conditioned(p, 2.0, rng);
    const ComplexMatrix mix_s = random_conditioned(s, 2.0, rng);
    if (p > 0 && s > 0) {
      blocks.a3 = mix_p * trail.a3 * mix_s.partialPivLu().inverse();
      blocks.w3 = mix_s * trail.w3 * mix_p.partialPivLu().inverse();
    } else {
      blocks.a3 = trail.a3;
      blocks.w3 = trail.w3;
    }

    ComplexMatrix a = assemble(blocks.u, blocks.a1, blocks.a2, blocks.a3, blocks.v);
    ComplexMatrix w = assemble(blocks.v, blocks.w1, blocks.w2, blocks.w3, blocks.u);
    if (w.cwiseAbs().maxCoeff() == 0.0) continue;

    WeightedPair pair = make_weighted_pair(std::move(a), std::move(w), tol);
    if (pair.k() != spec.target_k) continue;
    return {std::move(pair), std::move(blocks), spec.target_k};
  }
  throw ParameterError("could not realize k = " + std::to_string(spec.target_k) + " after " +
                       std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace ginv::testgen
