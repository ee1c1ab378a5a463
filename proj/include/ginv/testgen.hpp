#pragma once

#include <cstdint>
#include <random>

#include "ginv/core_linalg.hpp"
#include "ginv/weighted.hpp"

// Structured random (A, W) pairs with prescribed core size t and index k,
// assembled from the weighted core-EP block form.
namespace ginv::testgen {

struct PairSpec {
  Index q = 3;
  Index n = 3;
  Index t = 0;
  int target_k = 1;
  std::uint64_t seed = 0;
  double condition_cap = 2.0;  // singular values of A1, W1 lie in [1/cap, 1]
};

struct GeneratedPair {
  WeightedPair pair;
  WeightedCoreEPDecomposition ground_truth_blocks;
  int declared_k = 1;
};

/// Largest index the trailing blocks can realize for the given shape.
int max_feasible_k(Index q, Index n, Index t);

/// Deterministic in `spec.seed`. ParameterError for infeasible specs.
GeneratedPair generate_pair(const PairSpec& spec, const ToleranceConfig& tol = {});

/// size x size matrix N with N^index = 0 and N^(index-1) != 0.
ComplexMatrix generate_nilpotent(Index size, int index, std::uint64_t seed);

// Building blocks, exposed for tests.
ComplexMatrix random_gaussian(Index rows, Index cols, std::mt19937_64& rng);
ComplexMatrix random_unitary(Index n, std::mt19937_64& rng);
ComplexMatrix random_conditioned(Index n, double condition_cap, std::mt19937_64& rng);

}  // namespace ginv::testgen
