#pragma once

#include "parsum/parallel_sum.hpp"
#include "parsum/spectral.hpp"

namespace parsum {

// X + Y - X:Y, the classical common upper bound of X and Y.
PsdMatrix classical_upper_bound(const PsdMatrix& x, const PsdMatrix& y,
                                const ToleranceConfig& cfg);
PsdMatrix classical_upper_bound(const PsdMatrix& x, const PsdMatrix& y);

// Result of the join construction
//   X v Y = (X+Y)/2 + (X+Y)^{1/2} W^{1/2} (X+Y)^{1/2},
//   W = [(X+Y)^+]^{1/2} [ (X+Y)/4 - X:Y ] [(X+Y)^+]^{1/2}.
// The witness keeps W and the quarter gap so callers can check their
// positivity without recomputing.
struct JoinWitness {
  PsdMatrix join;
  PsdMatrix w;
  HermitianMatrix quarter_gap;  // (X+Y)/4 - X:Y
};

JoinWitness join(const PsdMatrix& x, const PsdMatrix& y, const ToleranceConfig& cfg);
JoinWitness join(const PsdMatrix& x, const PsdMatrix& y);

// Closed form (X + Y + |X - Y|)/2, valid when X and Y commute.
PsdMatrix join_commuting(const PsdMatrix& x, const PsdMatrix& y, const ToleranceConfig& cfg);
PsdMatrix join_commuting(const PsdMatrix& x, const PsdMatrix& y);

// P v Q = P + Q - P0 for orthogonal projections.
PsdMatrix join_projections(const PsdMatrix& p, const PsdMatrix& q, const ToleranceConfig& cfg);

// Z with alpha Z >= X and beta Z >= Y: the join of the scaled operands
// (X/alpha) v (Y/beta).
PsdMatrix join_scaled(const PsdMatrix& x, const PsdMatrix& y, double alpha, double beta,
                      const ToleranceConfig& cfg);
PsdMatrix join_scaled(const PsdMatrix& x, const PsdMatrix& y, double alpha, double beta);

// The join equals the classical bound exactly when X:Y = 0; in floating point
// both sides of the equivalence are decided with residual_tol.
struct JoinEqualityDiagnostic {
  double gap_norm;   // || C_{X,Y} - X v Y ||
  double psum_norm;  // || X : Y ||
  bool join_equals_classical;
  bool psum_is_zero;
};
JoinEqualityDiagnostic join_c_equality(const PsdMatrix& x, const PsdMatrix& y,
                                       const ToleranceConfig& cfg);

}  // namespace parsum
