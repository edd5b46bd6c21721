#pragma once

#include <vector>

#include "stochopt/core/types.hpp"

namespace stochopt {

// Batch-size growth for variance-controlled SG.  Prescribed mode follows
// n_k = ceil(tau^{k-1}) capped at the population size (finite sums switch
// to exact full-gradient steps once exhausted; for noise-oracle problems
// the cap is the caller's choice and defaults to "none").  Adaptive mode
// grows the size on norm-test failures but never falls below the
// prescribed backup sequence.
class DynamicSamplingPolicy {
 public:
  static DynamicSamplingPolicy prescribed(double tau, index_t cap);
  static DynamicSamplingPolicy adaptive(double chi, double backup_tau,
                                        index_t cap);

  // Batch size for iteration k (prescribed mode, and the backup floor in
  // adaptive mode).
  index_t prescribed_size(index_t k) const;

  // Adaptive mode: the size to use at iteration k given the current
  // adaptive level; equals max(level, backup).
  index_t adaptive_size(index_t k) const;

  // Records a failed norm test at iteration k; the *next* iteration's
  // size grows by the failure factor (deferred growth keeps the current
  // iteration's cost predictable).
  void record_test_failure();

  bool is_adaptive() const { return adaptive_; }
  double chi() const { return chi_; }
  double tau() const { return tau_; }

  // Largest admissible tau for a given fixed stepsize: (1 - a c mu / 2)^-1.
  static double max_admissible_tau(double alpha_bar, double c, double mu);

 private:
  DynamicSamplingPolicy() = default;

  bool adaptive_ = false;
  double tau_ = 2.0;
  double chi_ = 0.5;
  index_t cap_ = 0;
  index_t adaptive_level_ = 1;
  double growth_on_failure_ = 1.5;
};

// The sample-variance descent test: phi_k = trace(Cov({g_i})) / |S| must
// satisfy phi_k <= chi^2 ||g||^2.  Uses the unbiased covariance; requires
// at least two members.
struct NormTestResult {
  bool pass = false;
  double phi = 0.0;
};
NormTestResult adaptive_norm_test(const std::vector<Vector>& batch_gradients,
                                  const Vector& g, double chi);

}  // namespace stochopt
