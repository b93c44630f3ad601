#pragma once

#include <utility>

#include "parsum/cmatrix.hpp"
#include "parsum/eig.hpp"
#include "parsum/types.hpp"

namespace parsum {

// Complex square matrix validated Hermitian within tolerance at construction,
// then replaced by its exactly Hermitian part so downstream eigensolvers see
// symmetric data.
class HermitianMatrix {
 public:
  HermitianMatrix(const CMatrix& m, const ToleranceConfig& cfg);
  explicit HermitianMatrix(const CMatrix& m)
      : HermitianMatrix(m, ToleranceConfig::defaults(m.dim())) {}

  // Wraps a matrix that is already exactly Hermitian by construction.
  static HermitianMatrix unchecked(CMatrix m);

  int dim() const { return m_.dim(); }
  const CMatrix& matrix() const { return m_; }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

 protected:
  HermitianMatrix() = default;
  CMatrix m_;
};

// Hermitian matrix additionally validated positive semi-definite within
// tolerance (smallest eigenvalue >= -psd_tol * (1 + largest)).
class PsdMatrix : public HermitianMatrix {
 public:
  PsdMatrix(const CMatrix& m, const ToleranceConfig& cfg);
  explicit PsdMatrix(const CMatrix& m) : PsdMatrix(m, ToleranceConfig::defaults(m.dim())) {}
  PsdMatrix(const HermitianMatrix& h, const ToleranceConfig& cfg);

  static PsdMatrix unchecked(CMatrix m);
  static PsdMatrix zero(int n) { return unchecked(CMatrix::zero(n)); }
  static PsdMatrix identity(int n) { return unchecked(CMatrix::identity(n)); }

  // s must be >= 0 to stay in the cone.
  PsdMatrix scaled(double s) const;

  friend PsdMatrix operator+(const PsdMatrix& a, const PsdMatrix& b);

 private:
  PsdMatrix() = default;
};

EigenDecomposition eig_hermitian(const HermitianMatrix& m);

// Moore-Penrose inverse via the eigendecomposition: eigenvalues above
// rank_rel_tol * lambda_max are inverted, slightly negative ones inside the
// clamp window are zeroed, anything further below is a hard error.
PsdMatrix pinv_psd(const PsdMatrix& a, const ToleranceConfig& cfg);
PsdMatrix pinv_psd(const PsdMatrix& a);

PsdMatrix psd_sqrt(const PsdMatrix& a, const ToleranceConfig& cfg);
PsdMatrix psd_sqrt(const PsdMatrix& a);

// Largest |eigenvalue|; equals the 2-norm for Hermitian input.
double spectral_norm(const HermitianMatrix& m);

// 2-norm of a general square matrix, sqrt(lambda_max(M* M)).
double operator_norm(const CMatrix& m);

// True iff A - B is PSD within the psd_tol window.
bool loewner_geq(const HermitianMatrix& a, const HermitianMatrix& b,
                 const ToleranceConfig& cfg);
bool loewner_geq(const HermitianMatrix& a, const HermitianMatrix& b);

// True iff range(A) is contained in range(B): || B B^+ A - A || within tolerance.
bool range_contained(const PsdMatrix& a, const PsdMatrix& b, const ToleranceConfig& cfg);
bool range_contained(const PsdMatrix& a, const PsdMatrix& b);

// Number of eigenvalues above rank_rel_tol * lambda_max.
int numerical_rank(const PsdMatrix& a, const ToleranceConfig& cfg);

}  // namespace parsum
