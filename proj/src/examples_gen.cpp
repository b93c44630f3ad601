#include "parsum/examples_gen.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace parsum::demo {

namespace {

constexpr double kPi = std::numbers::pi;

void require_open_interval(double t, const char* name) {
  if (!(t > 0.0) || !(t < kPi / 2.0))
    throw ValidationError(std::string(name) + " = " + std::to_string(t) +
                          " outside the domain (0, pi/2)");
}

}  // namespace

PsdMatrix coupled(double t, int sign) {
  require_open_interval(t, "coupled: t");
  CMatrix m(2);
  m(0, 0) = m(1, 1) = std::cos(t);
  m(0, 1) = m(1, 0) = sign * std::sin(t) / 4.0;
  return PsdMatrix(m);
}

PsdMatrix line_projector(double angle) {
  if (!std::isfinite(angle))
    throw ValidationError("line_projector: angle must be finite");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  CMatrix m(2);
  m(0, 0) = c * c;
  m(0, 1) = m(1, 0) = -s * c;
  m(1, 1) = s * s;
  return PsdMatrix::unchecked(m);
}

PerturbationProblem problem1(double t_base, double t_a, double t_b) {
  const PsdMatrix a = coupled(t_base, +1);
  const PsdMatrix b = coupled(t_base, -1);
  const ToleranceConfig cfg = ToleranceConfig::defaults(2);
  const PsdMatrix x(coupled(t_a, +1) - a, cfg);
  const PsdMatrix y(coupled(t_b, -1) - b, cfg);
  return {a, b, x, y};
}

PerturbationProblem problem1() {
  return problem1(kPi / 6.0, 5.0 * kPi / 32.0, 3.0 * kPi / 32.0);
}

PerturbationProblem problem2(double t1, double t2, double t3, double t4) {
  return {line_projector(t1), line_projector(t2), line_projector(t3), line_projector(t4)};
}

PerturbationProblem problem2() {
  return problem2(kPi / 8.0, kPi / 6.0, kPi / 4.0, kPi / 3.0);
}

}  // namespace parsum::demo
