#include "parsum/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace parsum {

namespace {
// Below this dimension the OpenMP fork/join overhead dominates the work.
constexpr int kMatmulParallelCutoff = 96;
}  // namespace

CMatrix CMatrix::identity(int n) {
  CMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diag(const std::vector<double>& d) {
  CMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : a_) m = std::max(m, std::abs(v));
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_dim(*this, o, "operator+");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_dim(*this, o, "operator-");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (cplx& v : a_) v *= s;
  return *this;
}

CMatrix matmul_serial(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "matmul");
  const int n = a.dim();
  CMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

CMatrix matmul_parallel(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "matmul");
  const int n = a.dim();
  CMatrix c(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
#ifdef _OPENMP
  if (a.dim() >= kMatmulParallelCutoff) return matmul_parallel(a, b);
#endif
  return matmul_serial(a, b);
}

CMatrix hermitian_part(const CMatrix& m) {
  const int n = m.dim();
  CMatrix r(n);
  for (int i = 0; i < n; ++i) {
    r(i, i) = m(i, i).real();
    for (int j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      r(i, j) = v;
      r(j, i) = std::conj(v);
    }
  }
  return r;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* where) {
  if (a.dim() != b.dim())
    throw ValidationError(std::string(where) + ": dimension mismatch (" +
                          std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
}

}  // namespace parsum
