#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace parsum {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input fails a structural check (shape, Hermiticity, positivity, domain).
struct ValidationError : Error {
  using Error::Error;
};

// A computation broke down numerically (non-convergence, eigenvalue far
// outside its guaranteed range).
struct NumericalError : Error {
  using Error::Error;
};

// Malformed matrix file.
struct ParseError : Error {
  using Error::Error;
};

// Thresholds used by the validating matrix types and the spectral ops.
struct ToleranceConfig {
  double rank_rel_tol;  // eigenvalues below rank_rel_tol * lambda_max count as zero
  double psd_tol;       // slack for positivity / Loewner comparisons
  double residual_tol;  // slack for identities that hold exactly in real arithmetic

  static ToleranceConfig defaults(int dim) {
    return {static_cast<double>(dim) * std::numeric_limits<double>::epsilon(),
            1e-9, 1e-8};
  }

  void validate() const {
    auto ok = [](double v) {
      return v > 0.0 && v < std::numeric_limits<double>::infinity();
    };
    if (!ok(rank_rel_tol) || !ok(psd_tol) || !ok(residual_tol))
      throw ValidationError("ToleranceConfig: all tolerances must be positive and finite");
  }
};

}  // namespace parsum
