#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "parsum/perturbation.hpp"

namespace parsum {

struct FuzzConfig {
  long trials = 1000;
  int dim_min = 1;
  int dim_max = 8;
  std::uint64_t seed = 0;
  bool allow_rank_deficient = true;
  bool complex_entries = true;

  // 0 keeps the per-dimension default.
  double tol_rank = 0.0;
  double tol_psd = 0.0;
  double tol_residual = 0.0;

  // Coarse grid size for the per-trial objective minimization; t = 1 is
  // always included so the chain check against the join bound stays valid.
  int objective_points = 128;

  // Harness self-test hook: flips the outcome of the named check.
  std::string negate_check;

  void validate() const;
  ToleranceConfig tolerances(int dim) const;
};

// One named assertion: passed iff value <= limit.
struct CheckResult {
  std::string name;
  bool passed;
  double value;
  double limit;
  std::string note;
};

struct FuzzViolation {
  long trial;
  std::uint64_t sub_seed;
  CheckResult check;
};

struct FuzzSummary {
  long trials = 0;
  long checks_run = 0;
  long violations = 0;
  std::vector<FuzzViolation> details;
};

FuzzSummary run_fuzz(const FuzzConfig& cfg);

// Deterministic per-trial seed derived from the master seed.
std::uint64_t trial_seed(std::uint64_t master, long trial);

// Generators.
CMatrix random_gaussian(int n, std::mt19937_64& rng, bool complex_entries);
PsdMatrix random_psd(int n, std::mt19937_64& rng, bool complex_entries,
                     bool allow_rank_deficient);
PsdMatrix random_projection(int n, std::mt19937_64& rng, bool complex_entries);
std::pair<PsdMatrix, PsdMatrix> random_commuting_projections(int n, std::mt19937_64& rng,
                                                             bool complex_entries);

// Check batteries; each entry is a named residual or ordering assertion.
std::vector<CheckResult> run_quadruple_checks(const PerturbationProblem& p,
                                              const ToleranceConfig& cfg,
                                              int objective_points, std::mt19937_64& rng);
std::vector<CheckResult> run_projection_checks(const PsdMatrix& p, const PsdMatrix& q,
                                               const ToleranceConfig& cfg);

}  // namespace parsum
