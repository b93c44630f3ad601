#pragma once

#include <vector>

#include "parsum/cmatrix.hpp"

namespace parsum {

// M = U diag(eigenvalues) U*, eigenvalues ascending, U unitary with the
// eigenvectors as columns.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  CMatrix vectors;

  CMatrix reconstruct() const;
};

enum class EigMethod { serial, parallel, automatic };

// Cyclic Jacobi for exactly Hermitian input. The serial kernel sweeps pivots
// one by one; the parallel kernel applies a round-robin ordering so that each
// round rotates floor(n/2) disjoint pivot pairs across OpenMP threads.
// Throws NumericalError if the off-diagonal mass fails to decay.
EigenDecomposition jacobi_eig_serial(CMatrix m);
EigenDecomposition jacobi_eig_parallel(CMatrix m);
EigenDecomposition jacobi_eig(const CMatrix& m, EigMethod method = EigMethod::automatic);

// U f(lambda) U* for a scalar map f, symmetrized.
template <class F>
CMatrix assemble_from_eig(const EigenDecomposition& e, F f) {
  const int n = e.vectors.dim();
  CMatrix scaled = e.vectors;  // columns scaled by f(lambda_j)
  for (int j = 0; j < n; ++j) {
    const double fj = f(e.eigenvalues[static_cast<std::size_t>(j)]);
    for (int i = 0; i < n; ++i) scaled(i, j) *= fj;
  }
  return hermitian_part(matmul(scaled, e.vectors.adjoint()));
}

}  // namespace parsum
