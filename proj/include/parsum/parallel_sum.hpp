#pragma once

#include "parsum/spectral.hpp"

namespace parsum {

// A : B = A (A+B)^+ B. Defined for all PSD pairs; the zero pseudoinverse
// convention makes A : B = 0 when A + B = 0.
PsdMatrix parallel_sum(const PsdMatrix& a, const PsdMatrix& b, const ToleranceConfig& cfg);
PsdMatrix parallel_sum(const PsdMatrix& a, const PsdMatrix& b);

// Norms of A:B - B:A, A:B - (A - A(A+B)^+ A), A:B - (B - B(A+B)^+ B).
struct PsumIdentityResiduals {
  double commuted;
  double via_a;
  double via_b;
};
PsumIdentityResiduals parallel_sum_identity_residuals(const PsdMatrix& a, const PsdMatrix& b,
                                                      const ToleranceConfig& cfg);
PsumIdentityResiduals parallel_sum_identity_residuals(const PsdMatrix& a, const PsdMatrix& b);

// ||A|| ||B|| / (||A|| + ||B||), zero when both norms vanish.
double parallel_sum_norm_bound(const PsdMatrix& a, const PsdMatrix& b);

bool is_projection(const PsdMatrix& p, const ToleranceConfig& cfg);

// Orthogonal projector onto range(P) intersect range(Q) for orthogonal
// projections P and Q, built from the eigenvalue-2 eigenspace of P + Q.
PsdMatrix range_intersection_projector(const PsdMatrix& p, const PsdMatrix& q,
                                       const ToleranceConfig& cfg);

}  // namespace parsum
