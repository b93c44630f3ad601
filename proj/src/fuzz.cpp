#include "parsum/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace parsum {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct EigSummary {
  double lambda_min;
  double norm;
};

EigSummary eig_summary(const HermitianMatrix& h) {
  const EigenDecomposition e = eig_hermitian(h);
  if (e.eigenvalues.empty()) return {0.0, 0.0};
  return {e.eigenvalues.front(),
          std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()))};
}

// U diag(d) U* for the columns of a unitary U.
CMatrix in_basis(const CMatrix& u, const std::vector<double>& d) {
  const int n = u.dim();
  CMatrix scaled = u;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) scaled(i, j) *= d[static_cast<std::size_t>(j)];
  return hermitian_part(matmul(scaled, u.adjoint()));
}

}  // namespace

void FuzzConfig::validate() const {
  if (trials < 1) throw ValidationError("FuzzConfig: trials must be >= 1");
  if (dim_min < 1 || dim_max < dim_min)
    throw ValidationError("FuzzConfig: dimension bounds must be positive and ordered");
  if (objective_points < 3)
    throw ValidationError("FuzzConfig: objective_points must be >= 3");
}

ToleranceConfig FuzzConfig::tolerances(int dim) const {
  ToleranceConfig t = ToleranceConfig::defaults(dim);
  if (tol_rank > 0.0) t.rank_rel_tol = tol_rank;
  if (tol_psd > 0.0) t.psd_tol = tol_psd;
  if (tol_residual > 0.0) t.residual_tol = tol_residual;
  t.validate();
  return t;
}

std::uint64_t trial_seed(std::uint64_t master, long trial) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CMatrix random_gaussian(int n, std::mt19937_64& rng, bool complex_entries) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = gauss(rng);
      const double im = complex_entries ? gauss(rng) : 0.0;
      g(i, j) = cplx(re, im);
    }
  return g;
}

PsdMatrix random_psd(int n, std::mt19937_64& rng, bool complex_entries,
                     bool allow_rank_deficient) {
  CMatrix g = random_gaussian(n, rng, complex_entries);
  if (allow_rank_deficient) {
    std::uniform_int_distribution<int> count(0, n);
    const int k = count(rng);
    std::vector<int> cols(static_cast<std::size_t>(n));
    std::iota(cols.begin(), cols.end(), 0);
    std::shuffle(cols.begin(), cols.end(), rng);
    for (int c = 0; c < k; ++c)
      for (int i = 0; i < n; ++i) g(i, cols[static_cast<std::size_t>(c)]) = 0.0;
  }
  return PsdMatrix::unchecked(hermitian_part(matmul(g.adjoint(), g)));
}

PsdMatrix random_projection(int n, std::mt19937_64& rng, bool complex_entries) {
  std::uniform_int_distribution<int> rank_dist(1, n);
  const int r = rank_dist(rng);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Modified Gram-Schmidt with one re-orthogonalization pass.
  std::vector<std::vector<cplx>> q;
  while (static_cast<int>(q.size()) < r) {
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (auto& e : v) e = cplx(gauss(rng), complex_entries ? gauss(rng) : 0.0);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : q) {
        cplx dot = 0.0;
        for (int i = 0; i < n; ++i) dot += std::conj(u[static_cast<std::size_t>(i)]) * v[static_cast<std::size_t>(i)];
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= dot * u[static_cast<std::size_t>(i)];
      }
    double norm = 0.0;
    for (const auto& e : v) norm += std::norm(e);
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    for (auto& e : v) e /= norm;
    q.push_back(std::move(v));
  }

  CMatrix p(n);
  for (const auto& u : q)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) += u[static_cast<std::size_t>(i)] * std::conj(u[static_cast<std::size_t>(j)]);
  return PsdMatrix::unchecked(hermitian_part(p));
}

std::pair<PsdMatrix, PsdMatrix> random_commuting_projections(int n, std::mt19937_64& rng,
                                                             bool complex_entries) {
  // Shared eigenbasis (from a random Hermitian) with independent 0/1 spectra.
  const EigenDecomposition e =
      jacobi_eig(hermitian_part(random_gaussian(n, rng, complex_entries)));
  std::uniform_int_distribution<int> bit(0, 1);
  std::vector<double> d1(static_cast<std::size_t>(n)), d2(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    d1[static_cast<std::size_t>(i)] = bit(rng);
    d2[static_cast<std::size_t>(i)] = bit(rng);
  }
  d1[0] = 1.0;  // keep at least one unit eigenvalue so the norm equals one
  return {PsdMatrix::unchecked(in_basis(e.vectors, d1)),
          PsdMatrix::unchecked(in_basis(e.vectors, d2))};
}

std::vector<CheckResult> run_quadruple_checks(const PerturbationProblem& p,
                                              const ToleranceConfig& cfg,
                                              int objective_points, std::mt19937_64& rng) {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, double value, double limit) {
    out.push_back({name, value <= limit, value, limit, ""});
  };
  auto guarded = [&](const char* group, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      out.push_back({group, false, kNaN, 0.0, e.what()});
    }
  };

  const PsdMatrix& a = p.a;
  const PsdMatrix& b = p.b;
  const PsdMatrix& x = p.x;
  const PsdMatrix& y = p.y;

  guarded("penrose", [&] {
    double worst = 0.0;
    for (const PsdMatrix* m : {&a, &b, &x, &y}) {
      const PsdMatrix mp = pinv_psd(*m, cfg);
      const CMatrix& mm = m->matrix();
      const CMatrix& pm = mp.matrix();
      const CMatrix mpm = matmul(mm, pm);
      const double scale = 1.0 + spectral_norm(*m) + spectral_norm(mp);
      const double r1 = operator_norm(matmul(mpm, mm) - mm);
      const double r2 = operator_norm(matmul(pm, mpm.adjoint()) - pm);
      const double r3 = operator_norm(mpm.adjoint() - mpm);
      const CMatrix pmm = matmul(pm, mm);
      const double r4 = operator_norm(pmm.adjoint() - pmm);
      const double r5 = operator_norm(mpm - pmm);
      worst = std::max({worst, r1 / scale, r2 / scale, r3 / scale, r4 / scale, r5 / scale});
    }
    add("penrose", worst, cfg.residual_tol);
  });

  guarded("psum_identities", [&] {
    const PsumIdentityResiduals r = parallel_sum_identity_residuals(a, b, cfg);
    const double scale = 1.0 + spectral_norm(a) + spectral_norm(b);
    add("psum_identities", std::max({r.commuted, r.via_a, r.via_b}) / scale,
        cfg.residual_tol);
  });

  guarded("psum_norm_bound", [&] {
    const PsdMatrix ps = parallel_sum(a, b, cfg);
    add("psum_norm_bound", spectral_norm(ps) - parallel_sum_norm_bound(a, b), cfg.psd_tol);
  });

  guarded("psum_range_dim", [&] {
    const PsdMatrix ps = parallel_sum(a, b, cfg);
    const int expected =
        numerical_rank(a, cfg) + numerical_rank(b, cfg) - numerical_rank(a + b, cfg);
    add("psum_range_dim", std::abs(numerical_rank(ps, cfg) - expected), 0.0);
  });

  guarded("sqrt_square", [&] {
    const PsdMatrix s = psd_sqrt(a, cfg);
    add("sqrt_square",
        operator_norm(matmul(s.matrix(), s.matrix()) - a.matrix()) /
            (1.0 + spectral_norm(a)),
        cfg.residual_tol);
  });

  guarded("sqrt_pinv_commute", [&] {
    const PsdMatrix s1 = psd_sqrt(pinv_psd(a, cfg), cfg);
    const PsdMatrix s2 = pinv_psd(psd_sqrt(a, cfg), cfg);
    add("sqrt_pinv_commute",
        operator_norm(s1.matrix() - s2.matrix()) /
            (1.0 + spectral_norm(s1) + spectral_norm(s2)),
        cfg.residual_tol);
  });

  guarded("monotone", [&] {
    const PsdMatrix bigger = a + random_psd(a.dim(), rng, true, false);
    add("monotone_norm", spectral_norm(a) - spectral_norm(bigger), cfg.psd_tol);
    add("monotone_range", range_contained(a, bigger, cfg) ? 0.0 : 1.0, 0.0);
  });

  // Raw differences keep the positivity checks reportable even when a
  // validating constructor would refuse them.
  HermitianMatrix e_raw = HermitianMatrix::unchecked(CMatrix::zero(p.dim()));
  double error_norm = 0.0;
  bool have_error = false;
  guarded("e_psd", [&] {
    const PsdMatrix perturbed = parallel_sum(a + x, b + y, cfg);
    const PsdMatrix base = parallel_sum(a, b, cfg);
    e_raw = perturbed - base;
    have_error = true;
    const EigSummary s = eig_summary(e_raw);
    error_norm = s.norm;
    add("e_psd", -s.lambda_min, cfg.psd_tol * (1.0 + s.norm));
  });

  guarded("h_psd_factorization", [&] {
    if (!have_error) return;
    const PsdMatrix cross = parallel_sum(x, y, cfg);
    const HermitianMatrix h = e_raw - cross;
    const EigSummary hs = eig_summary(h);
    add("h_psd", -hs.lambda_min, cfg.psd_tol * (1.0 + hs.norm));

    const PsdMatrix t = parallel_sum(a + b, x + y, cfg);
    const CMatrix s = matmul(pinv_psd(a + b, cfg).matrix(), b.matrix()) -
                      matmul(pinv_psd(x + y, cfg).matrix(), y.matrix());
    const CMatrix rhs = matmul(s.adjoint(), matmul(t.matrix(), s));
    add("factorization",
        operator_norm(h.matrix() - rhs) / (1.0 + hs.norm + spectral_norm(t)),
        cfg.residual_tol);
  });

  guarded("join_order", [&] {
    const JoinWitness jw = join(x, y, cfg);
    const PsdMatrix c = classical_upper_bound(x, y, cfg);
    for (const auto& [name, diff] :
         {std::pair<const char*, HermitianMatrix>{"join_geq_x", jw.join - x},
          {"join_geq_y", jw.join - y},
          {"join_le_c", c - jw.join}}) {
      const EigSummary s = eig_summary(diff);
      add(name, -s.lambda_min, cfg.psd_tol * (1.0 + s.norm));
    }
    const EigSummary gs = eig_summary(jw.quarter_gap);
    add("quarter_gap", -gs.lambda_min, cfg.psd_tol * (1.0 + gs.norm));

    const double nx = spectral_norm(x);
    const double ny = spectral_norm(y);
    const double nj = spectral_norm(jw.join);
    const double nc = spectral_norm(c);
    const double ns = spectral_norm(x + y);
    add("join_norm_lower", std::max(nx, ny) - nj, cfg.psd_tol * (1.0 + nj));
    add("join_norm_upper", nc - ns, cfg.psd_tol * (1.0 + ns));

    // Bound chain on the same trial.
    if (!have_error) return;
    const double pb = parameterized_bound(p, 1.0, 1.0, cfg);
    const double mu = join_bound_coeff(a, b, cfg);
    const double lam = anderson_duffin_coeff(a, b, cfg);
    const double mub = mu * nj;
    const double lamj = lam * nj;
    const double lams = lam * ns;
    add("chain_error_le_param", error_norm - pb, cfg.psd_tol * (1.0 + pb));
    add("chain_param_le_join_bound", pb - mub, cfg.psd_tol * (1.0 + mub));
    add("chain_join_bound_le_additive_join", mub - lamj, cfg.psd_tol * (1.0 + lamj));
    add("chain_additive_join_le_additive_sum", lamj - lams, cfg.psd_tol * (1.0 + lams));
    add("coeff_join_le_additive", mu - lam, cfg.psd_tol);

    OptimizerConfig opt = OptimizerConfig::defaults();
    opt.coarse_points = objective_points;
    const ObjectiveMinimum m = minimize_bound_objective(p, opt, cfg);
    add("objective_min_le_join_bound", m.f_star - mub, cfg.residual_tol);
    add("objective_min_ge_error", error_norm - m.f_star, cfg.psd_tol * (1.0 + error_norm));
  });

  guarded("homogeneity", [&] {
    std::uniform_real_distribution<double> logs(std::log(0.1), std::log(10.0));
    const double s = std::exp(logs(rng));
    const PsdMatrix ps = parallel_sum(a, b, cfg);
    const PsdMatrix ps_scaled = parallel_sum(a.scaled(s), b.scaled(s), cfg);
    add("psum_homogeneous",
        operator_norm(ps_scaled.matrix() - s * ps.matrix()) /
            (s * (1.0 + spectral_norm(ps))),
        cfg.residual_tol);
    const PsdMatrix j = join(x, y, cfg).join;
    const PsdMatrix j_scaled = join(x.scaled(s), y.scaled(s), cfg).join;
    add("join_homogeneous",
        operator_norm(j_scaled.matrix() - s * j.matrix()) / (s * (1.0 + spectral_norm(j))),
        cfg.residual_tol);
  });

  guarded("commuting", [&] {
    const EigenDecomposition basis = eig_hermitian(a);
    std::uniform_real_distribution<double> mag(0.0, 2.0);
    std::vector<double> d1(static_cast<std::size_t>(p.dim())), d2(d1.size());
    for (auto& v : d1) v = mag(rng);
    for (auto& v : d2) v = mag(rng);
    const PsdMatrix cx = PsdMatrix::unchecked(in_basis(basis.vectors, d1));
    const PsdMatrix cy = PsdMatrix::unchecked(in_basis(basis.vectors, d2));
    const PsdMatrix j1 = join(cx, cy, cfg).join;
    const PsdMatrix j2 = join_commuting(cx, cy, cfg);
    const double scale = 1.0 + spectral_norm(cx) + spectral_norm(cy);
    add("join_commuting_agrees", operator_norm(j1.matrix() - j2.matrix()) / scale,
        cfg.residual_tol);
    add("join_commuting_norm",
        std::abs(spectral_norm(j1) - std::max(spectral_norm(cx), spectral_norm(cy))),
        cfg.psd_tol * scale);
  });

  return out;
}

std::vector<CheckResult> run_projection_checks(const PsdMatrix& p, const PsdMatrix& q,
                                               const ToleranceConfig& cfg) {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, double value, double limit) {
    out.push_back({name, value <= limit, value, limit, ""});
  };
  try {
    const PsdMatrix p0 = range_intersection_projector(p, q, cfg);
    const PsdMatrix psum = parallel_sum(p, q, cfg);
    add("proj_psum_half_p0", operator_norm(psum.matrix() - 0.5 * p0.matrix()),
        cfg.residual_tol);

    const PsdMatrix direct = join_projections(p, q, cfg);
    const PsdMatrix via_w = join(p, q, cfg).join;
    add("proj_join_formula", operator_norm(direct.matrix() - via_w.matrix()),
        cfg.residual_tol);

    const CMatrix comm = matmul(p.matrix(), q.matrix()) - matmul(q.matrix(), p.matrix());
    const bool commuting = operator_norm(comm) <= cfg.residual_tol;
    const double max_norm = std::max(spectral_norm(p), spectral_norm(q));
    const bool norm_attained = spectral_norm(via_w) <= max_norm + cfg.psd_tol;
    add("proj_norm_iff", commuting == norm_attained ? 0.0 : 1.0, 0.0);
  } catch (const std::exception& e) {
    out.push_back({"projection", false, kNaN, 0.0, e.what()});
  }
  return out;
}

FuzzSummary run_fuzz(const FuzzConfig& cfg) {
  cfg.validate();
  FuzzSummary summary;
  summary.trials = cfg.trials;

  std::vector<FuzzViolation> violations;
  long checks_run = 0;

#pragma omp parallel
  {
    std::vector<FuzzViolation> local;
    long local_checks = 0;
#pragma omp for schedule(dynamic)
    for (long trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t sub = trial_seed(cfg.seed, trial);
      std::mt19937_64 rng(sub);
      std::uniform_int_distribution<int> dim_dist(cfg.dim_min, cfg.dim_max);
      const int n = dim_dist(rng);
      const ToleranceConfig tol = cfg.tolerances(n);

      std::vector<CheckResult> results;
      try {
        const PsdMatrix a = random_psd(n, rng, cfg.complex_entries, cfg.allow_rank_deficient);
        const PsdMatrix b = random_psd(n, rng, cfg.complex_entries, cfg.allow_rank_deficient);
        const PsdMatrix x = random_psd(n, rng, cfg.complex_entries, cfg.allow_rank_deficient);
        const PsdMatrix y = random_psd(n, rng, cfg.complex_entries, cfg.allow_rank_deficient);
        const PerturbationProblem problem(a, b, x, y);
        results = run_quadruple_checks(problem, tol, cfg.objective_points, rng);

        if (trial % 4 == 0) {
          const bool shared_basis = trial % 8 == 0;
          PsdMatrix pp = PsdMatrix::zero(n), qq = PsdMatrix::zero(n);
          if (shared_basis) {
            auto pair = random_commuting_projections(n, rng, cfg.complex_entries);
            pp = pair.first;
            qq = pair.second;
          } else {
            pp = random_projection(n, rng, cfg.complex_entries);
            qq = random_projection(n, rng, cfg.complex_entries);
          }
          auto proj = run_projection_checks(pp, qq, tol);
          results.insert(results.end(), proj.begin(), proj.end());
        }
      } catch (const std::exception& e) {
        results.push_back({"trial", false, kNaN, 0.0, e.what()});
      }

      for (CheckResult& r : results) {
        if (!cfg.negate_check.empty() && r.name == cfg.negate_check) r.passed = !r.passed;
        ++local_checks;
        if (!r.passed) local.push_back({trial, sub, r});
      }
    }
#pragma omp critical
    {
      violations.insert(violations.end(), local.begin(), local.end());
      checks_run += local_checks;
    }
  }

  std::sort(violations.begin(), violations.end(), [](const FuzzViolation& u, const FuzzViolation& v) {
    return u.trial != v.trial ? u.trial < v.trial : u.check.name < v.check.name;
  });
  summary.checks_run = checks_run;
  summary.violations = static_cast<long>(violations.size());
  summary.details = std::move(violations);
  return summary;
}

}  // namespace parsum
