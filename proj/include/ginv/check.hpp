#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ginv/core_linalg.hpp"
#include "ginv/testgen.hpp"

// Property suite over generated instances, driving `ginv check`.
namespace ginv::check {

/// Per-property pass thresholds. `uniform(t)` replaces every one with t.
struct PropertyTolerances {
  double route = 1e-6;
  double outer = 1e-10;
  double subspace = 1e-8;
  double projector = 1e-9;
  double collapse = 1e-8;
  double defining = 1e-8;
  double optimality = 1e-9;
  double equation = 1e-9;
  double uniqueness = 1e-8;
  double bordering = 1e-8;
  double cramer = 1e-6;
  double decomposition = 1e-10;

  static PropertyTolerances uniform(double t);
};

struct InstanceSpec {
  testgen::PairSpec pair;
  int m = 1;
  Index rhs_cols = 1;
};

/// Deterministic instance for `index` under the given grid limits.
InstanceSpec draw_instance(std::uint64_t index, Index max_size, int k_max);

struct PropertyOutcome {
  std::string property;
  bool passed = false;
  std::string detail;
};

struct InstanceResult {
  InstanceSpec spec;
  std::optional<testgen::GeneratedPair> generated;  // empty when generation failed
  ComplexMatrix rhs_q;  // q x p right-hand side of the second problem and the equation
  ComplexMatrix rhs_n;  // n x p right-hand side of the first problem
  std::vector<PropertyOutcome> outcomes;
  // Whether the Moore-Penrose inverse was (correctly) rejected by the
  // defining system; empty when the instance does not qualify (t = min(q, n)).
  std::optional<bool> distinguishes;
};

InstanceResult check_instance(const InstanceSpec& spec, const PropertyTolerances& ptol,
                              const ToleranceConfig& tol = {});

struct CheckOptions {
  std::uint64_t seeds = 20;
  Index max_size = 8;
  int k_max = 3;
  std::optional<double> tol;  // uniform override of every property threshold
  ToleranceConfig numeric;
  std::string bundle_dir;     // empty: a directory under the system temp path
};

struct PropertyTally {
  std::string property;
  int passed = 0;
  int failed = 0;
};

struct CheckReport {
  std::vector<PropertyTally> tallies;
  std::uint64_t instances = 0;
  std::optional<std::string> bundle_path;  // first failing instance
  bool ok() const;
};

/// Runs the suite, printing progress and per-property counts to `out`.
CheckReport run_check(const CheckOptions& options, std::ostream& out);

/// Writes A.mat, W.mat and info.txt for reproduction; returns the directory.
std::string write_bundle(const std::string& dir, const InstanceResult& failing,
                         const PropertyOutcome& first_failure);

}  // namespace ginv::check
