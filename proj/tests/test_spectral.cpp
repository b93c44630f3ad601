#include <cmath>
#include <random>

#include "doctest.h"
#include "parsum/examples_gen.hpp"
#include "parsum/fuzz.hpp"
#include "parsum/spectral.hpp"

using namespace parsum;

namespace {

PsdMatrix psd2(double a00, double a01, double a10, double a11) {
  CMatrix m(2);
  m(0, 0) = a00;
  m(0, 1) = a01;
  m(1, 0) = a10;
  m(1, 1) = a11;
  return PsdMatrix(m);
}

}  // namespace

TEST_CASE("HermitianMatrix rejects a non-Hermitian input") {
  CMatrix m(2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianMatrix{m}, ValidationError);
}

TEST_CASE("PsdMatrix rejects an indefinite input") {
  CHECK_THROWS_AS(PsdMatrix{CMatrix::diag({-1.0, 1.0})}, ValidationError);
}

TEST_CASE("ToleranceConfig rejects nonpositive entries") {
  ToleranceConfig t = ToleranceConfig::defaults(2);
  t.psd_tol = 0.0;
  CHECK_THROWS_AS(t.validate(), ValidationError);
}

TEST_CASE("pinv of a diagonal matrix inverts the nonzero entries") {
  const PsdMatrix a(CMatrix::diag({2.0, 0.0}));
  const PsdMatrix ap = pinv_psd(a);
  CHECK(ap.matrix()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(ap.matrix()(1, 1)) <= 1e-15);
}

TEST_CASE("pinv of the identity is the identity") {
  const PsdMatrix a = PsdMatrix::identity(3);
  CHECK(max_abs_diff(pinv_psd(a).matrix(), a.matrix()) <= 1e-14);
}

TEST_CASE("a rank-1 projector is its own pseudoinverse") {
  const PsdMatrix p = psd2(0.5, 0.5, 0.5, 0.5);  // vv*/|v|^2 for v = (1,1)
  const PsdMatrix pp = pinv_psd(p);
  CHECK(max_abs_diff(pp.matrix(), p.matrix()) <= 1e-13);
}

TEST_CASE("Penrose identities on random PSD matrices") {
  std::mt19937_64 rng(101);
  const ToleranceConfig cfg = ToleranceConfig::defaults(6);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const PsdMatrix a = random_psd(n, rng, true, true);
    const PsdMatrix ap = pinv_psd(a, ToleranceConfig::defaults(n));
    const CMatrix& am = a.matrix();
    const CMatrix& pm = ap.matrix();
    const double scale = 1.0 + spectral_norm(a) + spectral_norm(ap);
    CHECK(operator_norm(matmul(am, matmul(pm, am)) - am) <= cfg.residual_tol * scale);
    CHECK(operator_norm(matmul(pm, matmul(am, pm)) - pm) <= cfg.residual_tol * scale);
    const CMatrix apm = matmul(am, pm);
    const CMatrix pam = matmul(pm, am);
    CHECK(operator_norm(apm.adjoint() - apm) <= cfg.residual_tol * scale);
    CHECK(operator_norm(pam.adjoint() - pam) <= cfg.residual_tol * scale);
    CHECK(operator_norm(apm - pam) <= cfg.residual_tol * scale);
  }
}

TEST_CASE("psd_sqrt of a diagonal matrix") {
  const PsdMatrix s = psd_sqrt(PsdMatrix(CMatrix::diag({4.0, 9.0})));
  CHECK(s.matrix()(0, 0).real() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s.matrix()(1, 1).real() == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("psd_sqrt of zero is zero") {
  CHECK(psd_sqrt(PsdMatrix::zero(2)).matrix().max_abs() == 0.0);
}

TEST_CASE("psd_sqrt of [[2,1],[1,2]] matches the hand-diagonalized form") {
  const PsdMatrix a = psd2(2, 1, 1, 2);
  const PsdMatrix s = psd_sqrt(a);
  const double d = (std::sqrt(3.0) + 1.0) / 2.0;
  const double o = (std::sqrt(3.0) - 1.0) / 2.0;
  CHECK(s.matrix()(0, 0).real() == doctest::Approx(d).epsilon(1e-13));
  CHECK(s.matrix()(0, 1).real() == doctest::Approx(o).epsilon(1e-13));
  CHECK(s.matrix()(1, 1).real() == doctest::Approx(d).epsilon(1e-13));
}

TEST_CASE("sqrt squared reconstructs and commutes with pinv") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const ToleranceConfig cfg = ToleranceConfig::defaults(n);
    const PsdMatrix a = random_psd(n, rng, true, true);
    const PsdMatrix s = psd_sqrt(a, cfg);
    CHECK(operator_norm(matmul(s.matrix(), s.matrix()) - a.matrix()) <=
          cfg.residual_tol * (1.0 + spectral_norm(a)));
    const PsdMatrix s1 = psd_sqrt(pinv_psd(a, cfg), cfg);
    const PsdMatrix s2 = pinv_psd(psd_sqrt(a, cfg), cfg);
    CHECK(operator_norm(s1.matrix() - s2.matrix()) <=
          cfg.residual_tol * (1.0 + spectral_norm(s1) + spectral_norm(s2)));
  }
}

TEST_CASE("spectral norm basics") {
  CHECK(spectral_norm(HermitianMatrix(CMatrix::diag({-3.0, 2.0}))) == doctest::Approx(3.0));
  CHECK(spectral_norm(HermitianMatrix(CMatrix::zero(2))) == 0.0);
}

TEST_CASE("line projectors have norm one for any angle") {
  for (double t : {0.0, 0.3, 1.0, 2.5, -1.2}) {
    CHECK(spectral_norm(demo::line_projector(t)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("spectral norm is homogeneous and subadditive") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const HermitianMatrix a = HermitianMatrix::unchecked(hermitian_part(random_gaussian(n, rng, true)));
    const HermitianMatrix b = HermitianMatrix::unchecked(hermitian_part(random_gaussian(n, rng, true)));
    const double s = 0.7;
    CHECK(spectral_norm(s * a) == doctest::Approx(s * spectral_norm(a)).epsilon(1e-12));
    CHECK(spectral_norm(a + b) <= spectral_norm(a) + spectral_norm(b) + 1e-12);
  }
}

TEST_CASE("loewner_geq basics") {
  const ToleranceConfig cfg = ToleranceConfig::defaults(2);
  CHECK(loewner_geq(PsdMatrix::identity(2), PsdMatrix::zero(2), cfg));
  CHECK_FALSE(loewner_geq(HermitianMatrix(CMatrix::diag({1.0, 0.0})),
                          HermitianMatrix(CMatrix::diag({0.0, 1.0})), cfg));
}

TEST_CASE("the dominated pair X <= Y from the worked 2x2 example") {
  const PsdMatrix x(CMatrix::diag({0.25, 1.0}));
  const PsdMatrix y = psd2(1, 1, 1, 3);
  CHECK(loewner_geq(y, x));
  CHECK_FALSE(loewner_geq(x, y));
}

TEST_CASE("range containment") {
  const ToleranceConfig cfg = ToleranceConfig::defaults(2);
  const PsdMatrix a(CMatrix::diag({1.0, 0.0}));
  CHECK(range_contained(a, a, cfg));
  CHECK(range_contained(a, PsdMatrix::identity(2), cfg));
  CHECK_FALSE(range_contained(PsdMatrix::identity(2), a, cfg));
}

TEST_CASE("ordered pairs imply norm and range monotonicity") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const ToleranceConfig cfg = ToleranceConfig::defaults(n);
    const PsdMatrix a = random_psd(n, rng, true, true);
    const PsdMatrix b = a + random_psd(n, rng, true, true);
    CHECK(loewner_geq(b, a, cfg));
    CHECK(spectral_norm(a) <= spectral_norm(b) + cfg.psd_tol);
    CHECK(range_contained(a, b, cfg));
  }
}

TEST_CASE("numerical rank uses the relative cutoff") {
  const ToleranceConfig cfg = ToleranceConfig::defaults(2);
  CHECK(numerical_rank(PsdMatrix(CMatrix::diag({1.0, 1e-20})), cfg) == 1);
  CHECK(numerical_rank(PsdMatrix::identity(2), cfg) == 2);
  CHECK(numerical_rank(PsdMatrix::zero(2), cfg) == 0);
}

TEST_CASE("loewner_geq dimension mismatch") {
  CHECK_THROWS_AS(loewner_geq(PsdMatrix::identity(2), PsdMatrix::identity(3)),
                  ValidationError);
}
