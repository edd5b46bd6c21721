#pragma once

#include <string>
#include <vector>

#include "stochopt/core/types.hpp"

namespace stochopt {

// One verified theorem bound: the configured constants, the bound and
// empirical values per checkpoint, and the verdict.  Every constant is
// analytic or explicitly configured, never silently estimated; the
// Monte-Carlo slack factor is reported alongside the verdict.
struct TheoremCheck {
  std::string id;
  std::vector<std::pair<std::string, double>> constants;
  std::vector<std::string> checkpoint_labels;
  std::vector<double> bound;
  std::vector<double> empirical;
  double slack = 1.0;
  bool pass = false;
  std::uint64_t seed_base = 0;
  int num_seeds = 0;
  std::string detail;

  // Worst empirical/bound ratio across checkpoints (<= slack passes,
  // except where a check defines its own margin semantics).
  double worst_ratio = 0.0;

  void add_constant(std::string name, double value) {
    constants.emplace_back(std::move(name), value);
  }
  std::string summary() const;
};

// --- SG theory on the noisy identity quadratic (c = L = M = mu = 1) ---

struct SgFixedConfig {
  int dim = 10;
  double noise = 1.0;
  double alpha = 0.5;
  int seeds = 20;
  index_t horizon = 4000;
  double slack = 1.2;
  std::uint64_t seed_base = 1000;
};
// Tail-mean gap within (0, slack * aLM/(2 c mu)] and the halving law:
// alpha/2 rescales the tail mean by a factor in [0.4, 0.6].
TheoremCheck check_fixed_stepsize_gap(const SgFixedConfig& config = {});

struct SgDiminishingConfig {
  int dim = 10;
  double noise = 1.0;
  double beta = 2.0;   // the 2/(c mu) recommendation
  double gamma = 1.0;  // keeps alpha_1 <= mu/(L M_G)
  int seeds = 20;
  std::vector<index_t> checkpoints = {100, 1000, 10000, 100000};
  double slack = 1.1;
  std::uint64_t seed_base = 2000;
};
// Mean gap <= slack * nu/(gamma+k) at each checkpoint, with
// nu = max(beta^2 L M / (2(beta c mu - 1)), (gamma+1)(F(w1)-F*)).
TheoremCheck check_diminishing_rate(const SgDiminishingConfig& config = {});

struct NonconvexConfig {
  double noise = 1.0;
  double alpha_fixed = 0.01;
  // Diminishing schedule chosen so the weighted average decays visibly
  // between the two checkpoints: beta/(gamma+k) with large gamma.
  double beta = 100.0;
  double gamma = 1e6;
  index_t horizon = 100000;
  index_t early_checkpoint = 1000;
  int seeds = 20;
  double slack = 1.1;
  double decay_factor = 0.1;
  std::uint64_t seed_base = 3000;
};
// Fixed stepsize: (1/K) sum ||grad F||^2 <= slack * (a L M / mu +
// 2 (F(w1)-F_inf)/(K mu a)).  Diminishing: the weighted average at the
// horizon is <= decay_factor times its early-checkpoint value.
TheoremCheck check_nonconvex_average_gradients(const NonconvexConfig& config = {});

struct NoiseReductionConfig {
  int dim = 4;
  double noise = 1.0;
  double alpha = 0.5;
  double tau = 4.0 / 3.0;  // the admissible upper endpoint for alpha=0.5
  index_t iterations = 55;
  int seeds = 20;
  double contraction_slack = 0.05;
  double work_target = 1e-6;  // epsilon for the O(1/eps) work ratio
  std::uint64_t seed_base = 4000;
};
// Dynamic sampling: mean per-iteration contraction <=
// max(1 - a c mu/2, 1/tau) + slack, and ADP(eps/2)/ADP(eps) in [1.5, 3].
TheoremCheck check_noise_reduction(const NoiseReductionConfig& config = {});

struct SvrgSagaConfig {
  index_t n = 1000;
  int dim = 50;
  double lambda = 1e-2;
  std::uint64_t data_seed = 77;
  double alpha_times_l = 0.1;  // SVRG stepsize as a fraction of 1/L
  index_t m = 1000;            // SVRG inner length
  index_t epoch_budget = 100;
  double gap_target = 1e-10;
  std::uint64_t seed_base = 5000;
};
// SVRG (rho-valid (alpha, m)) and SAGA (alpha = 1/(3L)) reach the gap
// target within the epoch budget; per-direction unbiasedness verified by
// full enumeration on an n=5 instance.
TheoremCheck check_svrg_saga(const SvrgSagaConfig& config = {});

struct NewtonConfig {
  index_t n = 1000;
  int dim = 50;
  double lambda = 1e-3;
  std::uint64_t data_seed = 99;
  double cg_tolerance = 1e-2;
  index_t max_cg = 50;
  index_t newton_budget = 30;
  double gtol = 1e-8;
  index_t gd_factor = 10;
};
// Deterministic Newton-CG reaches ||grad|| <= gtol within the budget;
// gradient descent at 1/L needs at least gd_factor times more iterations.
TheoremCheck check_newton_efficiency(const NewtonConfig& config = {});

struct CdRateConfig {
  int dim = 10;
  int seeds = 50;
  double slack = 1.1;
  std::uint64_t seed_base = 6000;
};
// Uniform-random CD on a d=10 quadratic: mean gap at k in {d, 10d, 100d}
// within slack of (1 - c/(d Lhat))^k gap_1; cache consistency <= 1e-10.
TheoremCheck check_cd_rate(const CdRateConfig& config = {});

struct ProxConfig {
  index_t n = 50;
  int dim = 20;
  std::uint64_t data_seed = 55;
  double objective_tol = 1e-6;
};
// ISTA per-iteration contraction <= 1 - alpha c on a strongly convex
// composite; ISTA / proximal Newton / orthant agreement on a LASSO
// instance (objective and exact zero pattern); split complementarity;
// the ISTA-vs-split discrepancy case.
TheoremCheck check_prox_suite(const ProxConfig& config = {});

// Second-order oracle identities (criterion 6): Hessian-vector products
// vs directional finite differences, CG vs dense solve, two-loop vs the
// dense BFGS recursion, Fisher vs generalized Gauss-Newton.
TheoremCheck check_second_order_oracles();

// L-BFGS pair collection on a deterministic strongly convex quadratic:
// cadence-1 curvature pairs reach the gap target in at most one fifth of
// the gradient-descent iteration count, with every stored pair safe.
TheoremCheck check_sqn_efficiency();

}  // namespace stochopt
