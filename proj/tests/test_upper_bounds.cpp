#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "parsum/examples_gen.hpp"
#include "parsum/fuzz.hpp"
#include "parsum/upper_bounds.hpp"

using namespace parsum;

namespace {

PsdMatrix scalar(double v) {
  CMatrix m(1);
  m(0, 0) = v;
  return PsdMatrix(m);
}

const PsdMatrix kExampleX(CMatrix::diag({0.25, 1.0}));

PsdMatrix example_y() {
  CMatrix m(2);
  m(0, 0) = 1.0;
  m(0, 1) = m(1, 0) = 1.0;
  m(1, 1) = 3.0;
  return PsdMatrix(m);
}

}  // namespace

TEST_CASE("classical upper bound basics") {
  std::mt19937_64 rng(61);
  const PsdMatrix x = random_psd(3, rng, true, false);
  const PsdMatrix c = classical_upper_bound(x, PsdMatrix::zero(3));
  CHECK(operator_norm(c.matrix() - x.matrix()) <= 1e-12 * (1.0 + spectral_norm(x)));

  CHECK(classical_upper_bound(scalar(1.0), scalar(1.0)).matrix()(0, 0).real() ==
        doctest::Approx(1.5).epsilon(1e-14));

  const PsdMatrix d1(CMatrix::diag({1.0, 0.0}));
  const PsdMatrix d2(CMatrix::diag({0.0, 1.0}));
  CHECK(max_abs_diff(classical_upper_bound(d1, d2).matrix(), CMatrix::identity(2)) <= 1e-13);
}

TEST_CASE("scalar join is the maximum") {
  CHECK(join(scalar(1.0), scalar(3.0)).join.matrix()(0, 0).real() ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(join(scalar(3.0), scalar(1.0)).join.matrix()(0, 0).real() ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK(join(scalar(0.0), scalar(0.0)).join.matrix().max_abs() == 0.0);
}

TEST_CASE("a dominated operand is returned exactly: worked 2x2 example") {
  const PsdMatrix x = kExampleX;
  const PsdMatrix y = example_y();
  const CMatrix comm = matmul(x.matrix(), y.matrix()) - matmul(y.matrix(), x.matrix());
  CHECK(operator_norm(comm) > 1e-3);  // genuinely non-commuting
  CHECK(loewner_geq(y, x));
  const JoinWitness w = join(x, y);
  CHECK(operator_norm(w.join.matrix() - y.matrix()) <= 1e-8);
  CHECK(loewner_geq(w.w, PsdMatrix::zero(2)));
  CHECK(loewner_geq(w.quarter_gap, HermitianMatrix(CMatrix::zero(2))));
}

TEST_CASE("commuting join closed form") {
  const PsdMatrix x(CMatrix::diag({1.0, 3.0}));
  const PsdMatrix y(CMatrix::diag({2.0, 2.0}));
  const CMatrix expected = CMatrix::diag({2.0, 3.0});
  CHECK(max_abs_diff(join_commuting(x, y).matrix(), expected) <= 1e-12);
  CHECK(operator_norm(join(x, y).join.matrix() - expected) <= 1e-10);

  std::mt19937_64 rng(67);
  const PsdMatrix a = random_psd(3, rng, true, false);
  CHECK(operator_norm(join_commuting(a, a).matrix() - a.matrix()) <= 1e-11);
  CHECK(operator_norm(join_commuting(a, PsdMatrix::zero(3)).matrix() - a.matrix()) <= 1e-11);
}

TEST_CASE("join_commuting rejects non-commuting inputs") {
  CHECK_THROWS_AS(join_commuting(kExampleX, example_y()), ValidationError);
}

TEST_CASE("commuting join norm is the max of the operand norms") {
  const PsdMatrix x(CMatrix::diag({1.0, 3.0}));
  const PsdMatrix y(CMatrix::diag({2.0, 2.0}));
  CHECK(spectral_norm(join_commuting(x, y)) ==
        doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("projection join formula") {
  const ToleranceConfig cfg = ToleranceConfig::defaults(2);
  const PsdMatrix d1(CMatrix::diag({1.0, 0.0}));
  const PsdMatrix d2(CMatrix::diag({0.0, 1.0}));
  CHECK(max_abs_diff(join_projections(d1, d2, cfg).matrix(), CMatrix::identity(2)) <= 1e-13);
  CHECK(operator_norm(join_projections(d1, d1, cfg).matrix() - d1.matrix()) <= 1e-13);

  // Commuting but distinct projections attain norm one.
  CHECK(spectral_norm(join_projections(d1, d2, cfg)) == doctest::Approx(1.0).epsilon(1e-12));

  // Non-commuting line projectors exceed norm one.
  const PsdMatrix p = demo::line_projector(std::numbers::pi / 4.0);
  const PsdMatrix q = demo::line_projector(std::numbers::pi / 3.0);
  CHECK(spectral_norm(join_projections(p, q, cfg)) > 1.0 + 1e-6);
  CHECK(operator_norm(join_projections(p, q, cfg).matrix() - join(p, q, cfg).join.matrix()) <=
        1e-8);
}

TEST_CASE("join_scaled reduces to join at unit weights") {
  std::mt19937_64 rng(71);
  const PsdMatrix x = random_psd(3, rng, true, false);
  const PsdMatrix y = random_psd(3, rng, true, false);
  CHECK(operator_norm(join_scaled(x, y, 1.0, 1.0).matrix() - join(x, y).join.matrix()) <=
        1e-11);
}

TEST_CASE("scaled scalar join") {
  CHECK(join_scaled(scalar(3.0), scalar(4.0), 3.0, 4.0).matrix()(0, 0).real() ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("join_scaled weight homogeneity") {
  std::mt19937_64 rng(73);
  const PsdMatrix x = random_psd(3, rng, true, false);
  const PsdMatrix y = random_psd(3, rng, true, false);
  const double s = 2.5;
  const PsdMatrix z1 = join_scaled(x, y, 1.2, 0.8);
  const PsdMatrix z2 = join_scaled(x, y, s * 1.2, s * 0.8);
  CHECK(operator_norm(z2.matrix() - (1.0 / s) * z1.matrix()) <=
        1e-10 * (1.0 + spectral_norm(z1)));
}

TEST_CASE("join_scaled rejects nonpositive weights") {
  CHECK_THROWS_AS(join_scaled(scalar(1.0), scalar(1.0), 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(join_scaled(scalar(1.0), scalar(1.0), 1.0, -2.0), ValidationError);
}

TEST_CASE("join ordering and homogeneity on random pairs") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const ToleranceConfig cfg = ToleranceConfig::defaults(n);
    const PsdMatrix x = random_psd(n, rng, true, true);
    const PsdMatrix y = random_psd(n, rng, true, true);
    const JoinWitness w = join(x, y, cfg);
    const PsdMatrix c = classical_upper_bound(x, y, cfg);
    CHECK(loewner_geq(w.join, x, cfg));
    CHECK(loewner_geq(w.join, y, cfg));
    CHECK(loewner_geq(c, w.join, cfg));
    CHECK(loewner_geq(w.quarter_gap, HermitianMatrix(CMatrix::zero(n)), cfg));

    const double nmax = std::max(spectral_norm(x), spectral_norm(y));
    const double nj = spectral_norm(w.join);
    CHECK(nmax - cfg.psd_tol <= nj);
    CHECK(nj <= spectral_norm(c) + cfg.psd_tol);
    CHECK(spectral_norm(c) <= spectral_norm(x + y) + cfg.psd_tol);

    const double s = 0.5 + 2.0 * (static_cast<double>(rng() % 1000) / 1000.0);
    const PsdMatrix js = join(x.scaled(s), y.scaled(s), cfg).join;
    CHECK(operator_norm(js.matrix() - s * w.join.matrix()) <=
          cfg.residual_tol * s * (1.0 + nj));
  }
}

TEST_CASE("equality with the classical bound iff the parallel sum vanishes") {
  const ToleranceConfig cfg = ToleranceConfig::defaults(2);
  const PsdMatrix d1(CMatrix::diag({1.0, 0.0}));
  const PsdMatrix d2(CMatrix::diag({0.0, 1.0}));
  const JoinEqualityDiagnostic disjoint = join_c_equality(d1, d2, cfg);
  CHECK(disjoint.join_equals_classical);
  CHECK(disjoint.psum_is_zero);

  std::mt19937_64 rng(83);
  const PsdMatrix x = random_psd(2, rng, true, false);
  const PsdMatrix y = random_psd(2, rng, true, false);
  const JoinEqualityDiagnostic generic = join_c_equality(x, y, cfg);
  CHECK_FALSE(generic.join_equals_classical);
  CHECK_FALSE(generic.psum_is_zero);
}
