#include "parsum/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace parsum {

namespace {

constexpr int kMaxSweeps = 64;
constexpr int kEigParallelCutoff = 128;

// Unitary plane rotation [[c, s], [-conj(s), c]] on the (p,q) plane, chosen
// so that (G* M G)(p,q) = 0. c is real, c^2 + |s|^2 = 1.
struct Rotation {
  double c;
  cplx s;
  double t;  // tangent, for the exact diagonal update
};

Rotation make_rotation(double app, double aqq, cplx apq) {
  const double g = std::abs(apq);
  const double tau = (aqq - app) / (2.0 * g);
  const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, (t * c) * (apq / g), t};
}

double offdiag_frobenius(const CMatrix& a) {
  const int n = a.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += std::norm(a(i, j));
  return std::sqrt(2.0 * s);
}

void apply_columns(CMatrix& a, int p, int q, const Rotation& r) {
  const int n = a.dim();
  const cplx sc = std::conj(r.s);
  for (int i = 0; i < n; ++i) {
    const cplx mp = a(i, p);
    const cplx mq = a(i, q);
    a(i, p) = r.c * mp - sc * mq;
    a(i, q) = r.s * mp + r.c * mq;
  }
}

void apply_rows(CMatrix& a, int p, int q, const Rotation& r) {
  const int n = a.dim();
  const cplx sc = std::conj(r.s);
  for (int j = 0; j < n; ++j) {
    const cplx mp = a(p, j);
    const cplx mq = a(q, j);
    a(p, j) = r.c * mp - r.s * mq;
    a(q, j) = sc * mp + r.c * mq;
  }
}

// The pivot is annihilated exactly and the diagonal entries move along the
// eigenvalue update app - t|apq|, aqq + t|apq|.
void fix_pivot(CMatrix& a, int p, int q, double app, double aqq, double g, double t) {
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * g;
  a(q, q) = aqq + t * g;
}

EigenDecomposition finalize(CMatrix a, CMatrix u) {
  const int n = a.dim();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = a(i, i).real();
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return diag[static_cast<std::size_t>(x)] < diag[static_cast<std::size_t>(y)]; });

  EigenDecomposition e;
  e.eigenvalues.resize(static_cast<std::size_t>(n));
  e.vectors = CMatrix(n);
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<std::size_t>(j)];
    e.eigenvalues[static_cast<std::size_t>(j)] = diag[static_cast<std::size_t>(src)];
    for (int i = 0; i < n; ++i) e.vectors(i, j) = u(i, src);
  }
  return e;
}

[[noreturn]] void fail_convergence(int n) {
  throw NumericalError("jacobi_eig: eigensolver failed to converge for dimension n=" +
                       std::to_string(n));
}

}  // namespace

CMatrix EigenDecomposition::reconstruct() const {
  return assemble_from_eig(*this, [](double x) { return x; });
}

EigenDecomposition jacobi_eig_serial(CMatrix a) {
  const int n = a.dim();
  CMatrix u = CMatrix::identity(n);
  if (n <= 1) return finalize(std::move(a), std::move(u));

  const double scale = a.frobenius_norm();
  const double stop = std::numeric_limits<double>::epsilon() * scale;
  const double skip = stop / (2.0 * n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_frobenius(a) <= stop) return finalize(std::move(a), std::move(u));
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g <= skip) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Rotation r = make_rotation(app, aqq, a(p, q));
        apply_columns(a, p, q, r);
        apply_rows(a, p, q, r);
        fix_pivot(a, p, q, app, aqq, g, r.t);
        apply_columns(u, p, q, r);
      }
  }
  if (offdiag_frobenius(a) <= stop) return finalize(std::move(a), std::move(u));
  fail_convergence(n);
}

EigenDecomposition jacobi_eig_parallel(CMatrix a) {
  const int n = a.dim();
  CMatrix u = CMatrix::identity(n);
  if (n <= 1) return finalize(std::move(a), std::move(u));

  const double scale = a.frobenius_norm();
  const double stop = std::numeric_limits<double>::epsilon() * scale;
  const double skip = stop / (2.0 * n);

  // Round-robin tournament schedule: m slots (one a dummy when n is odd),
  // slot 0 fixed, the rest rotating. Every round pairs all slots disjointly,
  // m-1 rounds visit every (p,q) once.
  const int m = (n % 2 == 0) ? n : n + 1;
  std::vector<int> slots(static_cast<std::size_t>(m));
  std::iota(slots.begin(), slots.end(), 0);
  const int npairs = m / 2;

  std::vector<std::pair<int, int>> pairs(static_cast<std::size_t>(npairs));
  std::vector<Rotation> rots(static_cast<std::size_t>(npairs));
  std::vector<char> active(static_cast<std::size_t>(npairs));
  std::vector<std::pair<double, double>> diags(static_cast<std::size_t>(npairs));
  std::vector<double> pivot_mags(static_cast<std::size_t>(npairs));

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_frobenius(a) <= stop) return finalize(std::move(a), std::move(u));
    for (int round = 0; round < m - 1; ++round) {
      for (int k = 0; k < npairs; ++k) {
        int p = slots[static_cast<std::size_t>(k)];
        int q = slots[static_cast<std::size_t>(m - 1 - k)];
        if (p > q) std::swap(p, q);
        pairs[static_cast<std::size_t>(k)] = {p, q};
        if (q >= n || std::abs(a(p, q)) <= skip) {
          active[static_cast<std::size_t>(k)] = 0;
          continue;
        }
        active[static_cast<std::size_t>(k)] = 1;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        diags[static_cast<std::size_t>(k)] = {app, aqq};
        pivot_mags[static_cast<std::size_t>(k)] = std::abs(a(p, q));
        rots[static_cast<std::size_t>(k)] = make_rotation(app, aqq, a(p, q));
      }

      // Disjoint pairs touch disjoint columns (then disjoint rows), so each
      // phase is safe to run in parallel; M <- G* (M G) needs the column
      // phase completed before the row phase starts.
#pragma omp parallel for schedule(static)
      for (int k = 0; k < npairs; ++k)
        if (active[static_cast<std::size_t>(k)])
          apply_columns(a, pairs[static_cast<std::size_t>(k)].first,
                        pairs[static_cast<std::size_t>(k)].second,
                        rots[static_cast<std::size_t>(k)]);
#pragma omp parallel for schedule(static)
      for (int k = 0; k < npairs; ++k)
        if (active[static_cast<std::size_t>(k)])
          apply_rows(a, pairs[static_cast<std::size_t>(k)].first,
                     pairs[static_cast<std::size_t>(k)].second,
                     rots[static_cast<std::size_t>(k)]);
#pragma omp parallel for schedule(static)
      for (int k = 0; k < npairs; ++k)
        if (active[static_cast<std::size_t>(k)]) {
          const auto [p, q] = pairs[static_cast<std::size_t>(k)];
          const auto [app, aqq] = diags[static_cast<std::size_t>(k)];
          fix_pivot(a, p, q, app, aqq, pivot_mags[static_cast<std::size_t>(k)],
                    rots[static_cast<std::size_t>(k)].t);
        }

      // Rotate the schedule (slot 0 stays fixed).
      std::rotate(slots.begin() + 1, slots.end() - 1, slots.end());

#pragma omp parallel for schedule(static)
      for (int k = 0; k < npairs; ++k)
        if (active[static_cast<std::size_t>(k)])
          apply_columns(u, pairs[static_cast<std::size_t>(k)].first,
                        pairs[static_cast<std::size_t>(k)].second,
                        rots[static_cast<std::size_t>(k)]);
    }
  }
  if (offdiag_frobenius(a) <= stop) return finalize(std::move(a), std::move(u));
  fail_convergence(n);
}

EigenDecomposition jacobi_eig(const CMatrix& m, EigMethod method) {
  switch (method) {
    case EigMethod::serial:
      return jacobi_eig_serial(m);
    case EigMethod::parallel:
      return jacobi_eig_parallel(m);
    case EigMethod::automatic:
    default:
#ifdef _OPENMP
      if (m.dim() >= kEigParallelCutoff) return jacobi_eig_parallel(m);
#endif
      return jacobi_eig_serial(m);
  }
}

}  // namespace parsum
