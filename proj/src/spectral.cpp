#include "parsum/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace parsum {

namespace {

double max_abs_eigenvalue(const EigenDecomposition& e) {
  if (e.eigenvalues.empty()) return 0.0;
  return std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
}

[[noreturn]] void fail_clamp(const char* what, double lambda, double window) {
  throw NumericalError(std::string(what) + ": eigenvalue " + std::to_string(lambda) +
                       " below the clamp window " + std::to_string(window));
}

}  // namespace

HermitianMatrix::HermitianMatrix(const CMatrix& m, const ToleranceConfig& cfg) {
  cfg.validate();
  const double dev = (m - m.adjoint()).frobenius_norm();
  if (dev > cfg.psd_tol * (1.0 + m.frobenius_norm()))
    throw ValidationError("HermitianMatrix: matrix is not Hermitian (deviation " +
                          std::to_string(dev) + ")");
  m_ = hermitian_part(m);
}

HermitianMatrix HermitianMatrix::unchecked(CMatrix m) {
  HermitianMatrix h;
  h.m_ = std::move(m);
  return h;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::unchecked(a.m_ + b.m_);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::unchecked(a.m_ - b.m_);
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix::unchecked(s * a.m_);
}

PsdMatrix::PsdMatrix(const CMatrix& m, const ToleranceConfig& cfg)
    : PsdMatrix(HermitianMatrix(m, cfg), cfg) {}

PsdMatrix::PsdMatrix(const HermitianMatrix& h, const ToleranceConfig& cfg) {
  m_ = h.matrix();
  const EigenDecomposition e = eig_hermitian(h);
  if (!e.eigenvalues.empty()) {
    const double lmax = std::max(0.0, e.eigenvalues.back());
    const double lmin = e.eigenvalues.front();
    if (lmin < -cfg.psd_tol * (1.0 + lmax))
      throw ValidationError("PsdMatrix: matrix is not positive semi-definite (lambda_min " +
                            std::to_string(lmin) + ")");
  }
}

PsdMatrix PsdMatrix::unchecked(CMatrix m) {
  PsdMatrix p;
  p.m_ = std::move(m);
  return p;
}

PsdMatrix PsdMatrix::scaled(double s) const {
  if (!(s >= 0.0))
    throw ValidationError("PsdMatrix::scaled: scale must be nonnegative");
  return unchecked(s * m_);
}

PsdMatrix operator+(const PsdMatrix& a, const PsdMatrix& b) {
  return PsdMatrix::unchecked(a.matrix() + b.matrix());
}

EigenDecomposition eig_hermitian(const HermitianMatrix& m) {
  return jacobi_eig(m.matrix());
}

PsdMatrix pinv_psd(const PsdMatrix& a, const ToleranceConfig& cfg) {
  cfg.validate();
  const EigenDecomposition e = eig_hermitian(a);
  const double lmax = e.eigenvalues.empty() ? 0.0 : std::max(0.0, e.eigenvalues.back());
  const double cut = cfg.rank_rel_tol * lmax;
  const double window = -cfg.psd_tol * (1.0 + lmax);
  for (double lambda : e.eigenvalues)
    if (lambda < window) fail_clamp("pinv_psd", lambda, window);
  return PsdMatrix::unchecked(
      assemble_from_eig(e, [&](double l) { return l > cut ? 1.0 / l : 0.0; }));
}

PsdMatrix pinv_psd(const PsdMatrix& a) {
  return pinv_psd(a, ToleranceConfig::defaults(a.dim()));
}

PsdMatrix psd_sqrt(const PsdMatrix& a, const ToleranceConfig& cfg) {
  cfg.validate();
  const EigenDecomposition e = eig_hermitian(a);
  const double lmax = e.eigenvalues.empty() ? 0.0 : std::max(0.0, e.eigenvalues.back());
  const double window = -cfg.psd_tol * (1.0 + lmax);
  for (double lambda : e.eigenvalues)
    if (lambda < window) fail_clamp("psd_sqrt", lambda, window);
  return PsdMatrix::unchecked(
      assemble_from_eig(e, [](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; }));
}

PsdMatrix psd_sqrt(const PsdMatrix& a) {
  return psd_sqrt(a, ToleranceConfig::defaults(a.dim()));
}

double spectral_norm(const HermitianMatrix& m) {
  return max_abs_eigenvalue(eig_hermitian(m));
}

double operator_norm(const CMatrix& m) {
  if (m.dim() == 0) return 0.0;
  const CMatrix gram = hermitian_part(matmul(m.adjoint(), m));
  const EigenDecomposition e = jacobi_eig(gram);
  return std::sqrt(std::max(0.0, e.eigenvalues.back()));
}

bool loewner_geq(const HermitianMatrix& a, const HermitianMatrix& b,
                 const ToleranceConfig& cfg) {
  require_same_dim(a.matrix(), b.matrix(), "loewner_geq");
  cfg.validate();
  const EigenDecomposition e = eig_hermitian(a - b);
  if (e.eigenvalues.empty()) return true;
  const double norm = max_abs_eigenvalue(e);
  return e.eigenvalues.front() >= -cfg.psd_tol * (1.0 + norm);
}

bool loewner_geq(const HermitianMatrix& a, const HermitianMatrix& b) {
  return loewner_geq(a, b, ToleranceConfig::defaults(a.dim()));
}

bool range_contained(const PsdMatrix& a, const PsdMatrix& b, const ToleranceConfig& cfg) {
  require_same_dim(a.matrix(), b.matrix(), "range_contained");
  const CMatrix bp = pinv_psd(b, cfg).matrix();
  const CMatrix resid = matmul(b.matrix(), matmul(bp, a.matrix())) - a.matrix();
  return operator_norm(resid) <= cfg.residual_tol * (1.0 + spectral_norm(a));
}

bool range_contained(const PsdMatrix& a, const PsdMatrix& b) {
  return range_contained(a, b, ToleranceConfig::defaults(a.dim()));
}

int numerical_rank(const PsdMatrix& a, const ToleranceConfig& cfg) {
  const EigenDecomposition e = eig_hermitian(a);
  const double lmax = e.eigenvalues.empty() ? 0.0 : std::max(0.0, e.eigenvalues.back());
  const double cut = cfg.rank_rel_tol * lmax;
  int r = 0;
  for (double lambda : e.eigenvalues)
    if (lambda > cut) ++r;
  return r;
}

}  // namespace parsum
