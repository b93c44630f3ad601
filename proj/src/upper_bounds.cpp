#include "parsum/upper_bounds.hpp"

#include <cmath>
#include <string>

namespace parsum {

namespace {

ToleranceConfig dflt(const PsdMatrix& x) { return ToleranceConfig::defaults(x.dim()); }

}  // namespace

PsdMatrix classical_upper_bound(const PsdMatrix& x, const PsdMatrix& y,
                                const ToleranceConfig& cfg) {
  require_same_dim(x.matrix(), y.matrix(), "classical_upper_bound");
  const PsdMatrix psum = parallel_sum(x, y, cfg);
  return PsdMatrix((x + y) - psum, cfg);
}

PsdMatrix classical_upper_bound(const PsdMatrix& x, const PsdMatrix& y) {
  return classical_upper_bound(x, y, dflt(x));
}

JoinWitness join(const PsdMatrix& x, const PsdMatrix& y, const ToleranceConfig& cfg) {
  require_same_dim(x.matrix(), y.matrix(), "join");
  cfg.validate();

  const PsdMatrix s = x + y;
  const EigenDecomposition es = eig_hermitian(s);
  const double lmax = es.eigenvalues.empty() ? 0.0 : std::max(0.0, es.eigenvalues.back());
  const double cut = cfg.rank_rel_tol * lmax;

  const CMatrix sqrt_s =
      assemble_from_eig(es, [](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
  const CMatrix sqrt_pinv_s =
      assemble_from_eig(es, [&](double l) { return l > cut ? 1.0 / std::sqrt(l) : 0.0; });
  const CMatrix pinv_s =
      assemble_from_eig(es, [&](double l) { return l > cut ? 1.0 / l : 0.0; });

  const CMatrix psum = matmul(x.matrix(), matmul(pinv_s, y.matrix()));
  const HermitianMatrix quarter_gap =
      HermitianMatrix::unchecked(hermitian_part(0.25 * s.matrix() - psum));

  {
    const EigenDecomposition eg = eig_hermitian(quarter_gap);
    if (!eg.eigenvalues.empty()) {
      const double gmax = std::max(std::abs(eg.eigenvalues.front()),
                                   std::abs(eg.eigenvalues.back()));
      if (eg.eigenvalues.front() < -cfg.psd_tol * (1.0 + gmax))
        throw NumericalError("join: (X+Y)/4 - X:Y has eigenvalue " +
                             std::to_string(eg.eigenvalues.front()) +
                             " outside the positivity window");
    }
  }

  const CMatrix w_raw =
      hermitian_part(matmul(sqrt_pinv_s, matmul(quarter_gap.matrix(), sqrt_pinv_s)));
  const EigenDecomposition ew = jacobi_eig(w_raw);
  const double wmax = ew.eigenvalues.empty() ? 0.0 : std::max(0.0, ew.eigenvalues.back());
  const double window = -cfg.psd_tol * (1.0 + wmax);
  for (double lambda : ew.eigenvalues)
    if (lambda < window)
      throw NumericalError("join: W eigenvalue " + std::to_string(lambda) +
                           " below the clamp window " + std::to_string(window));

  const CMatrix w = assemble_from_eig(ew, [](double l) { return l > 0.0 ? l : 0.0; });
  const CMatrix sqrt_w =
      assemble_from_eig(ew, [](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });

  const CMatrix join_m =
      hermitian_part(0.5 * s.matrix() + matmul(sqrt_s, matmul(sqrt_w, sqrt_s)));
  return {PsdMatrix(join_m, cfg), PsdMatrix::unchecked(w), quarter_gap};
}

JoinWitness join(const PsdMatrix& x, const PsdMatrix& y) { return join(x, y, dflt(x)); }

PsdMatrix join_commuting(const PsdMatrix& x, const PsdMatrix& y, const ToleranceConfig& cfg) {
  require_same_dim(x.matrix(), y.matrix(), "join_commuting");
  const CMatrix comm = matmul(x.matrix(), y.matrix()) - matmul(y.matrix(), x.matrix());
  const double limit = cfg.residual_tol * (1.0 + spectral_norm(x) * spectral_norm(y));
  const double dev = operator_norm(comm);
  if (dev > limit)
    throw ValidationError("join_commuting: inputs do not commute (||XY-YX|| = " +
                          std::to_string(dev) + ")");
  const HermitianMatrix diff = x - y;
  const CMatrix abs_diff =
      assemble_from_eig(eig_hermitian(diff), [](double l) { return std::abs(l); });
  return PsdMatrix(hermitian_part(0.5 * ((x + y).matrix() + abs_diff)), cfg);
}

PsdMatrix join_commuting(const PsdMatrix& x, const PsdMatrix& y) {
  return join_commuting(x, y, dflt(x));
}

PsdMatrix join_projections(const PsdMatrix& p, const PsdMatrix& q, const ToleranceConfig& cfg) {
  const PsdMatrix p0 = range_intersection_projector(p, q, cfg);
  return PsdMatrix((p + q) - p0, cfg);
}

PsdMatrix join_scaled(const PsdMatrix& x, const PsdMatrix& y, double alpha, double beta,
                      const ToleranceConfig& cfg) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw ValidationError("join_scaled: alpha and beta must be positive and finite");
  return join(x.scaled(1.0 / alpha), y.scaled(1.0 / beta), cfg).join;
}

PsdMatrix join_scaled(const PsdMatrix& x, const PsdMatrix& y, double alpha, double beta) {
  return join_scaled(x, y, alpha, beta, dflt(x));
}

JoinEqualityDiagnostic join_c_equality(const PsdMatrix& x, const PsdMatrix& y,
                                       const ToleranceConfig& cfg) {
  const JoinWitness w = join(x, y, cfg);
  const PsdMatrix c = classical_upper_bound(x, y, cfg);
  const PsdMatrix psum = parallel_sum(x, y, cfg);
  const double scale = 1.0 + spectral_norm(x) + spectral_norm(y);
  JoinEqualityDiagnostic d;
  d.gap_norm = operator_norm(c.matrix() - w.join.matrix());
  d.psum_norm = spectral_norm(psum);
  d.join_equals_classical = d.gap_norm <= cfg.residual_tol * scale;
  d.psum_is_zero = d.psum_norm <= cfg.residual_tol * scale;
  return d;
}

}  // namespace parsum
