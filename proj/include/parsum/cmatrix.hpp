#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "parsum/types.hpp"

namespace parsum {

using cplx = std::complex<double>;

// Dense square complex matrix, row-major storage.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {}

  static CMatrix identity(int n);
  static CMatrix zero(int n) { return CMatrix(n); }
  static CMatrix diag(const std::vector<double>& d);

  int dim() const { return n_; }

  cplx& operator()(int i, int j) { return a_[idx(i, j)]; }
  const cplx& operator()(int i, int j) const { return a_[idx(i, j)]; }

  CMatrix adjoint() const;

  double frobenius_norm() const;
  double max_abs() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);
  CMatrix& operator*=(double s) { return *this *= cplx(s, 0.0); }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, double s) { return a *= s; }
  friend CMatrix operator*(double s, CMatrix a) { return a *= s; }

  friend bool operator==(const CMatrix& a, const CMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  int n_ = 0;
  std::vector<cplx> a_;
};

// Matrix product kernels. The serial version is the reference; the parallel
// one distributes rows over OpenMP threads. matmul() picks based on size.
CMatrix matmul_serial(const CMatrix& a, const CMatrix& b);
CMatrix matmul_parallel(const CMatrix& a, const CMatrix& b);
CMatrix matmul(const CMatrix& a, const CMatrix& b);

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

// (m + m*)/2, exactly Hermitian in floating point (real diagonal).
CMatrix hermitian_part(const CMatrix& m);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* where);

}  // namespace parsum
