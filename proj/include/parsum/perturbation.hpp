#pragma once

#include <array>
#include <optional>

#include "parsum/upper_bounds.hpp"

namespace parsum {

// PSD quadruple (A, B, X, Y) of matching dimension: base matrices A, B and
// perturbations X, Y.
struct PerturbationProblem {
  PsdMatrix a, b, x, y;

  PerturbationProblem(PsdMatrix a_, PsdMatrix b_, PsdMatrix x_, PsdMatrix y_);
  int dim() const { return a.dim(); }
};

// E = (A+X):(B+Y) - A:B.
PsdMatrix error_matrix(const PerturbationProblem& p, const ToleranceConfig& cfg);
PsdMatrix error_matrix(const PerturbationProblem& p);

// T = (A+B):(X+Y) and H = (A+X):(B+Y) - A:B - X:Y, both PSD.
struct HAndT {
  HermitianMatrix h;
  PsdMatrix t;
};
HAndT h_and_t(const PerturbationProblem& p, const ToleranceConfig& cfg);
HAndT h_and_t(const PerturbationProblem& p);

// || H - S* T S || for S = (A+B)^+ B - (X+Y)^+ Y; zero in exact arithmetic.
double factorization_residual(const PerturbationProblem& p, const ToleranceConfig& cfg);
double factorization_residual(const PerturbationProblem& p);

// One-sided perturbation G = (A+X):B - A:B and its two norm bounds
// (sharp refinement first, classical bound second).
PsdMatrix one_sided_error(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& x,
                          const ToleranceConfig& cfg);
PsdMatrix one_sided_error(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& x);
struct OneSidedBounds {
  double sharp;
  double classical;
};
OneSidedBounds one_sided_bounds(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& x,
                                const ToleranceConfig& cfg);
OneSidedBounds one_sided_bounds(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& x);

// Bounds on F = (A + alpha Z):(B + beta Z) - A:B for a shared perturbation Z.
struct TwoSidedSharedBounds {
  double refined;
  double simplified;
};
TwoSidedSharedBounds two_sided_shared_bounds(const PsdMatrix& a, const PsdMatrix& b,
                                             const PsdMatrix& z, double alpha, double beta,
                                             const ToleranceConfig& cfg);
TwoSidedSharedBounds two_sided_shared_bounds(const PsdMatrix& a, const PsdMatrix& b,
                                             const PsdMatrix& z, double alpha, double beta);

// Coefficient of the additive bound ||E|| <= coeff * ||X+Y||:
//   2 ||(A+B)^+ A||^2 + 2 ||(A+B)^+ B||^2 + 1/2.
double anderson_duffin_coeff(const PsdMatrix& a, const PsdMatrix& b, const ToleranceConfig& cfg);
double anderson_duffin_coeff(const PsdMatrix& a, const PsdMatrix& b);

// Coefficient of the join bound ||E|| <= coeff * ||X v Y||:
//   ( ||(A+B)^+ (A-B)||^2 + 1 ) / 2. Never exceeds the additive coefficient.
double join_bound_coeff(const PsdMatrix& a, const PsdMatrix& b, const ToleranceConfig& cfg);
double join_bound_coeff(const PsdMatrix& a, const PsdMatrix& b);

// The one-parameter bound objective
//   f(t) = [ ||(A+B)^+ (tA - B)||^2 + t ] / (1+t) * || X v (Y/t) ||,
// an upper bound on ||E|| for every t > 0.
class BoundObjective {
 public:
  BoundObjective(const PerturbationProblem& p, const ToleranceConfig& cfg);
  double operator()(double t) const;

 private:
  CMatrix apb_pinv_;
  CMatrix a_, b_;
  PsdMatrix x_, y_;
  ToleranceConfig cfg_;
};

double bound_objective(const PerturbationProblem& p, double t, const ToleranceConfig& cfg);
double bound_objective(const PerturbationProblem& p, double t);

// Search settings for the objective minimization: a coarse grid uniform in
// ln t followed by golden-section refinement around the best point.
struct OptimizerConfig {
  double log_t_min;
  double log_t_max;
  int coarse_points;
  double refine_tol;

  static OptimizerConfig defaults();
  void validate() const;
};

struct ObjectiveMinimum {
  double t_star;
  double f_star;
};
ObjectiveMinimum minimize_bound_objective(const PerturbationProblem& p,
                                          const OptimizerConfig& opt,
                                          const ToleranceConfig& cfg);
ObjectiveMinimum minimize_bound_objective(const PerturbationProblem& p);

// The two-parameter bound evaluated at (alpha, beta); scale-invariant in
// (alpha, beta) and equal to the objective at t = beta/alpha up to the
// simplification of its denominator.
double parameterized_bound(const PerturbationProblem& p, double alpha, double beta,
                           const ToleranceConfig& cfg);
double parameterized_bound(const PerturbationProblem& p, double alpha, double beta);

// One row of the comparison table: the actual error norm, every bound, and
// the relative errors (bound/||E|| - 1) when ||E|| > 0.
struct BoundReport {
  double error_norm;
  double additive_bound;   // anderson_duffin_coeff * ||X+Y||
  double objective_min;    // inf_t f(t)
  double objective_argmin;
  double join_bound;       // join_bound_coeff * ||X v Y||
  std::optional<std::array<double, 3>> relative_errors;  // additive, objective, join
};
BoundReport bound_report(const PerturbationProblem& p, const OptimizerConfig& opt,
                         const ToleranceConfig& cfg);
BoundReport bound_report(const PerturbationProblem& p);

}  // namespace parsum
