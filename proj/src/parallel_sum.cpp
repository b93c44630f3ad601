#include "parsum/parallel_sum.hpp"

#include <cmath>

namespace parsum {

PsdMatrix parallel_sum(const PsdMatrix& a, const PsdMatrix& b, const ToleranceConfig& cfg) {
  require_same_dim(a.matrix(), b.matrix(), "parallel_sum");
  const CMatrix sp = pinv_psd(a + b, cfg).matrix();
  const CMatrix prod = matmul(a.matrix(), matmul(sp, b.matrix()));
  return PsdMatrix(prod, cfg);
}

PsdMatrix parallel_sum(const PsdMatrix& a, const PsdMatrix& b) {
  return parallel_sum(a, b, ToleranceConfig::defaults(a.dim()));
}

PsumIdentityResiduals parallel_sum_identity_residuals(const PsdMatrix& a, const PsdMatrix& b,
                                                      const ToleranceConfig& cfg) {
  require_same_dim(a.matrix(), b.matrix(), "parallel_sum_identity_residuals");
  const CMatrix sp = pinv_psd(a + b, cfg).matrix();
  const CMatrix ab = matmul(a.matrix(), matmul(sp, b.matrix()));
  const CMatrix ba = matmul(b.matrix(), matmul(sp, a.matrix()));
  const CMatrix via_a = a.matrix() - matmul(a.matrix(), matmul(sp, a.matrix()));
  const CMatrix via_b = b.matrix() - matmul(b.matrix(), matmul(sp, b.matrix()));
  return {operator_norm(ab - ba), operator_norm(ab - via_a), operator_norm(ab - via_b)};
}

PsumIdentityResiduals parallel_sum_identity_residuals(const PsdMatrix& a, const PsdMatrix& b) {
  return parallel_sum_identity_residuals(a, b, ToleranceConfig::defaults(a.dim()));
}

double parallel_sum_norm_bound(const PsdMatrix& a, const PsdMatrix& b) {
  require_same_dim(a.matrix(), b.matrix(), "parallel_sum_norm_bound");
  const double na = spectral_norm(a);
  const double nb = spectral_norm(b);
  if (na + nb == 0.0) return 0.0;
  return na * nb / (na + nb);
}

bool is_projection(const PsdMatrix& p, const ToleranceConfig& cfg) {
  const CMatrix resid = matmul(p.matrix(), p.matrix()) - p.matrix();
  return operator_norm(resid) <= cfg.residual_tol * (1.0 + spectral_norm(p));
}

PsdMatrix range_intersection_projector(const PsdMatrix& p, const PsdMatrix& q,
                                       const ToleranceConfig& cfg) {
  require_same_dim(p.matrix(), q.matrix(), "range_intersection_projector");
  if (!is_projection(p, cfg) || !is_projection(q, cfg))
    throw ValidationError("range_intersection_projector: inputs must be orthogonal projections");

  const EigenDecomposition e = eig_hermitian(p + q);
  const int n = p.dim();
  CMatrix p0(n);
  // P0 = V V* over the eigenvectors with eigenvalue within residual_tol of 2.
  for (int k = 0; k < n; ++k) {
    if (std::abs(e.eigenvalues[static_cast<std::size_t>(k)] - 2.0) > cfg.residual_tol) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        p0(i, j) += e.vectors(i, k) * std::conj(e.vectors(j, k));
  }
  return PsdMatrix::unchecked(hermitian_part(p0));
}

}  // namespace parsum
