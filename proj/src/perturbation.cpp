#include "parsum/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace parsum {

namespace {

ToleranceConfig dflt(int n) { return ToleranceConfig::defaults(n); }

void require_positive_param(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ValidationError(std::string(name) + " must be positive and finite");
}

}  // namespace

PerturbationProblem::PerturbationProblem(PsdMatrix a_, PsdMatrix b_, PsdMatrix x_, PsdMatrix y_)
    : a(std::move(a_)), b(std::move(b_)), x(std::move(x_)), y(std::move(y_)) {
  require_same_dim(a.matrix(), b.matrix(), "PerturbationProblem");
  require_same_dim(a.matrix(), x.matrix(), "PerturbationProblem");
  require_same_dim(a.matrix(), y.matrix(), "PerturbationProblem");
}

PsdMatrix error_matrix(const PerturbationProblem& p, const ToleranceConfig& cfg) {
  const PsdMatrix perturbed = parallel_sum(p.a + p.x, p.b + p.y, cfg);
  const PsdMatrix base = parallel_sum(p.a, p.b, cfg);
  return PsdMatrix(perturbed - base, cfg);
}

PsdMatrix error_matrix(const PerturbationProblem& p) { return error_matrix(p, dflt(p.dim())); }

HAndT h_and_t(const PerturbationProblem& p, const ToleranceConfig& cfg) {
  const PsdMatrix t = parallel_sum(p.a + p.b, p.x + p.y, cfg);
  const PsdMatrix perturbed = parallel_sum(p.a + p.x, p.b + p.y, cfg);
  const PsdMatrix base = parallel_sum(p.a, p.b, cfg);
  const PsdMatrix cross = parallel_sum(p.x, p.y, cfg);
  const HermitianMatrix h = (perturbed - base) - cross;

  const EigenDecomposition eh = eig_hermitian(h);
  if (!eh.eigenvalues.empty()) {
    const double hmax =
        std::max(std::abs(eh.eigenvalues.front()), std::abs(eh.eigenvalues.back()));
    if (eh.eigenvalues.front() < -cfg.psd_tol * (1.0 + hmax))
      throw NumericalError("h_and_t: H has eigenvalue " +
                           std::to_string(eh.eigenvalues.front()) +
                           " outside the positivity window");
  }
  return {h, t};
}

HAndT h_and_t(const PerturbationProblem& p) { return h_and_t(p, dflt(p.dim())); }

double factorization_residual(const PerturbationProblem& p, const ToleranceConfig& cfg) {
  const HAndT ht = h_and_t(p, cfg);
  const CMatrix apb_pinv = pinv_psd(p.a + p.b, cfg).matrix();
  const CMatrix xpy_pinv = pinv_psd(p.x + p.y, cfg).matrix();
  const CMatrix s = matmul(apb_pinv, p.b.matrix()) - matmul(xpy_pinv, p.y.matrix());
  const CMatrix rhs = matmul(s.adjoint(), matmul(ht.t.matrix(), s));
  return operator_norm(ht.h.matrix() - rhs);
}

double factorization_residual(const PerturbationProblem& p) {
  return factorization_residual(p, dflt(p.dim()));
}

PsdMatrix one_sided_error(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& x,
                          const ToleranceConfig& cfg) {
  const PsdMatrix perturbed = parallel_sum(a + x, b, cfg);
  const PsdMatrix base = parallel_sum(a, b, cfg);
  return PsdMatrix(perturbed - base, cfg);
}

PsdMatrix one_sided_error(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& x) {
  return one_sided_error(a, b, x, dflt(a.dim()));
}

OneSidedBounds one_sided_bounds(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& x,
                                const ToleranceConfig& cfg) {
  require_same_dim(a.matrix(), b.matrix(), "one_sided_bounds");
  require_same_dim(a.matrix(), x.matrix(), "one_sided_bounds");
  const PsdMatrix apb = a + b;
  const CMatrix apb_pinv = pinv_psd(apb, cfg).matrix();
  const double proj = operator_norm(matmul(apb_pinv, b.matrix()));
  const double napb = spectral_norm(apb);
  const double nx = spectral_norm(x);
  const double denom = napb + nx;
  const double sharp = denom > 0.0 ? proj * proj * napb * nx / denom : 0.0;
  const double classical = proj * proj * nx;
  return {sharp, classical};
}

OneSidedBounds one_sided_bounds(const PsdMatrix& a, const PsdMatrix& b, const PsdMatrix& x) {
  return one_sided_bounds(a, b, x, dflt(a.dim()));
}

TwoSidedSharedBounds two_sided_shared_bounds(const PsdMatrix& a, const PsdMatrix& b,
                                             const PsdMatrix& z, double alpha, double beta,
                                             const ToleranceConfig& cfg) {
  require_positive_param(alpha, "alpha");
  require_positive_param(beta, "beta");
  require_same_dim(a.matrix(), b.matrix(), "two_sided_shared_bounds");
  require_same_dim(a.matrix(), z.matrix(), "two_sided_shared_bounds");
  const PsdMatrix apb = a + b;
  const CMatrix apb_pinv = pinv_psd(apb, cfg).matrix();
  const double mix = operator_norm(matmul(apb_pinv, (beta * a - alpha * b).matrix()));
  const double napb = spectral_norm(apb);
  const double nz = spectral_norm(z);
  const double denom = napb + (alpha + beta) * nz;
  const double frac = denom > 0.0 ? mix * mix * napb / denom : 0.0;
  const double refined = (frac + alpha * beta) * nz / (alpha + beta);
  const double simplified = (mix * mix + alpha * beta) * nz / (alpha + beta);
  return {refined, simplified};
}

TwoSidedSharedBounds two_sided_shared_bounds(const PsdMatrix& a, const PsdMatrix& b,
                                             const PsdMatrix& z, double alpha, double beta) {
  return two_sided_shared_bounds(a, b, z, alpha, beta, dflt(a.dim()));
}

double anderson_duffin_coeff(const PsdMatrix& a, const PsdMatrix& b,
                             const ToleranceConfig& cfg) {
  require_same_dim(a.matrix(), b.matrix(), "anderson_duffin_coeff");
  const CMatrix apb_pinv = pinv_psd(a + b, cfg).matrix();
  const double pa = operator_norm(matmul(apb_pinv, a.matrix()));
  const double pb = operator_norm(matmul(apb_pinv, b.matrix()));
  return 2.0 * pa * pa + 2.0 * pb * pb + 0.5;
}

double anderson_duffin_coeff(const PsdMatrix& a, const PsdMatrix& b) {
  return anderson_duffin_coeff(a, b, dflt(a.dim()));
}

double join_bound_coeff(const PsdMatrix& a, const PsdMatrix& b, const ToleranceConfig& cfg) {
  require_same_dim(a.matrix(), b.matrix(), "join_bound_coeff");
  const CMatrix apb_pinv = pinv_psd(a + b, cfg).matrix();
  const double mix = operator_norm(matmul(apb_pinv, (a - b).matrix()));
  return 0.5 * (mix * mix + 1.0);
}

double join_bound_coeff(const PsdMatrix& a, const PsdMatrix& b) {
  return join_bound_coeff(a, b, dflt(a.dim()));
}

BoundObjective::BoundObjective(const PerturbationProblem& p, const ToleranceConfig& cfg)
    : apb_pinv_(pinv_psd(p.a + p.b, cfg).matrix()),
      a_(p.a.matrix()),
      b_(p.b.matrix()),
      x_(p.x),
      y_(p.y),
      cfg_(cfg) {}

double BoundObjective::operator()(double t) const {
  require_positive_param(t, "t");
  const CMatrix mix = matmul(apb_pinv_, t * a_ - b_);
  const double coeff = operator_norm(mix);
  const PsdMatrix zt = join(x_, y_.scaled(1.0 / t), cfg_).join;
  return (coeff * coeff + t) / (1.0 + t) * spectral_norm(zt);
}

double bound_objective(const PerturbationProblem& p, double t, const ToleranceConfig& cfg) {
  return BoundObjective(p, cfg)(t);
}

double bound_objective(const PerturbationProblem& p, double t) {
  return bound_objective(p, t, dflt(p.dim()));
}

OptimizerConfig OptimizerConfig::defaults() {
  const double span = std::log(1e4);
  return {-span, span, 256, 1e-6};
}

void OptimizerConfig::validate() const {
  if (!(log_t_min < log_t_max) || !std::isfinite(log_t_min) || !std::isfinite(log_t_max))
    throw ValidationError("OptimizerConfig: log_t_min must be below log_t_max");
  if (coarse_points < 3) throw ValidationError("OptimizerConfig: coarse_points must be >= 3");
  if (!(refine_tol > 0.0)) throw ValidationError("OptimizerConfig: refine_tol must be positive");
}

ObjectiveMinimum minimize_bound_objective(const PerturbationProblem& p,
                                          const OptimizerConfig& opt,
                                          const ToleranceConfig& cfg) {
  opt.validate();
  const BoundObjective f(p, cfg);

  // Coarse grid in ln t; t = 1 is always a candidate so the minimum never
  // exceeds the join bound, which is the objective at t = 1.
  std::vector<double> lnts;
  lnts.reserve(static_cast<std::size_t>(opt.coarse_points) + 1);
  for (int i = 0; i < opt.coarse_points; ++i)
    lnts.push_back(opt.log_t_min + (opt.log_t_max - opt.log_t_min) * i /
                                       (opt.coarse_points - 1));
  lnts.push_back(0.0);
  std::sort(lnts.begin(), lnts.end());

  double best_t = 0.0;
  double best_f = std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < lnts.size(); ++i) {
    const double t = std::exp(lnts[i]);
    const double v = f(t);
    if (!std::isfinite(v))
      throw NumericalError("minimize_bound_objective: objective is not finite at t = " +
                           std::to_string(t));
    if (v < best_f) {
      best_f = v;
      best_t = t;
      best_i = i;
    }
  }

  // Golden-section refinement in ln t on the bracket around the best grid
  // point, tracking the best value seen anywhere.
  double lo = lnts[best_i > 0 ? best_i - 1 : 0];
  double hi = lnts[std::min(best_i + 1, lnts.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(std::exp(x1));
  double f2 = f(std::exp(x2));
  auto consider = [&](double lnt, double v) {
    if (v < best_f) {
      best_f = v;
      best_t = std::exp(lnt);
    }
  };
  consider(x1, f1);
  consider(x2, f2);

  for (int iter = 0; iter < 200; ++iter) {
    if (std::exp(hi) - std::exp(lo) <= opt.refine_tol * (1.0 + best_t)) break;
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(std::exp(x1));
      consider(x1, f1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(std::exp(x2));
      consider(x2, f2);
    }
  }
  return {best_t, best_f};
}

ObjectiveMinimum minimize_bound_objective(const PerturbationProblem& p) {
  return minimize_bound_objective(p, OptimizerConfig::defaults(), dflt(p.dim()));
}

double parameterized_bound(const PerturbationProblem& p, double alpha, double beta,
                           const ToleranceConfig& cfg) {
  require_positive_param(alpha, "alpha");
  require_positive_param(beta, "beta");
  const PsdMatrix apb = p.a + p.b;
  const CMatrix apb_pinv = pinv_psd(apb, cfg).matrix();
  const double mix =
      operator_norm(matmul(apb_pinv, (beta * p.a - alpha * p.b).matrix()));
  const double napb = spectral_norm(apb);
  const PsdMatrix z = join_scaled(p.x, p.y, alpha, beta, cfg);
  const double nz = spectral_norm(z);
  const double ab = alpha + beta;
  const double denom = ab * napb + ab * ab * nz;
  const double frac = denom > 0.0 ? mix * mix * napb / denom : 0.0;
  return (frac + alpha * beta / ab) * nz;
}

double parameterized_bound(const PerturbationProblem& p, double alpha, double beta) {
  return parameterized_bound(p, alpha, beta, dflt(p.dim()));
}

BoundReport bound_report(const PerturbationProblem& p, const OptimizerConfig& opt,
                         const ToleranceConfig& cfg) {
  BoundReport r;
  r.error_norm = spectral_norm(error_matrix(p, cfg));
  r.additive_bound = anderson_duffin_coeff(p.a, p.b, cfg) * spectral_norm(p.x + p.y);
  const ObjectiveMinimum m = minimize_bound_objective(p, opt, cfg);
  r.objective_min = m.f_star;
  r.objective_argmin = m.t_star;
  r.join_bound =
      join_bound_coeff(p.a, p.b, cfg) * spectral_norm(join(p.x, p.y, cfg).join);

  const double slack = cfg.psd_tol * (1.0 + r.error_norm);
  for (double bound : {r.additive_bound, r.objective_min, r.join_bound})
    if (bound < r.error_norm - slack)
      throw NumericalError("bound_report: computed bound " + std::to_string(bound) +
                           " fell below the error norm " + std::to_string(r.error_norm));
  if (r.objective_min > r.join_bound + cfg.residual_tol * (1.0 + r.join_bound))
    throw NumericalError("bound_report: objective minimum exceeds the join bound");

  if (r.error_norm > 0.0)
    r.relative_errors = {{r.additive_bound / r.error_norm - 1.0,
                          r.objective_min / r.error_norm - 1.0,
                          r.join_bound / r.error_norm - 1.0}};
  return r;
}

BoundReport bound_report(const PerturbationProblem& p) {
  return bound_report(p, OptimizerConfig::defaults(), dflt(p.dim()));
}

}  // namespace parsum
