#include "stochopt/nr/dynamic_sampling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stochopt {

DynamicSamplingPolicy DynamicSamplingPolicy::prescribed(double tau,
                                                        index_t cap) {
  if (!(tau > 1.0)) throw std::invalid_argument("dynamic sampling: tau must exceed 1");
  DynamicSamplingPolicy p;
  p.adaptive_ = false;
  p.tau_ = tau;
  p.cap_ = cap > 0 ? cap : std::numeric_limits<index_t>::max();
  return p;
}

DynamicSamplingPolicy DynamicSamplingPolicy::adaptive(double chi,
                                                      double backup_tau,
                                                      index_t cap) {
  if (!(backup_tau > 1.0)) throw std::invalid_argument("dynamic sampling: tau must exceed 1");
  if (!(chi >= 0.0 && chi < 1.0)) throw std::invalid_argument("dynamic sampling: chi must lie in [0,1)");
  DynamicSamplingPolicy p;
  p.adaptive_ = true;
  p.chi_ = chi;
  p.tau_ = backup_tau;
  p.cap_ = cap > 0 ? cap : std::numeric_limits<index_t>::max();
  return p;
}

index_t DynamicSamplingPolicy::prescribed_size(index_t k) const {
  double raw = std::pow(tau_, static_cast<double>(k - 1));
  if (raw >= static_cast<double>(cap_)) return cap_;
  return static_cast<index_t>(std::ceil(raw));
}

index_t DynamicSamplingPolicy::adaptive_size(index_t k) const {
  index_t floor = prescribed_size(k);
  index_t level = std::min(adaptive_level_, cap_);
  return std::max(level, floor);
}

void DynamicSamplingPolicy::record_test_failure() {
  auto grown = static_cast<index_t>(
      std::ceil(growth_on_failure_ * static_cast<double>(adaptive_level_)));
  adaptive_level_ = std::min(grown, cap_);
}

double DynamicSamplingPolicy::max_admissible_tau(double alpha_bar, double c,
                                                 double mu) {
  double contraction = 1.0 - 0.5 * alpha_bar * c * mu;
  if (!(contraction > 0.0 && contraction < 1.0)) {
    throw std::invalid_argument("max_admissible_tau: need 0 < a c mu / 2 < 1");
  }
  return 1.0 / contraction;
}

NormTestResult adaptive_norm_test(const std::vector<Vector>& batch_gradients,
                                  const Vector& g, double chi) {
  auto b = static_cast<index_t>(batch_gradients.size());
  if (b < 2) {
    throw std::invalid_argument("adaptive_norm_test: need at least two batch members");
  }
  Vector mean = Vector::Zero(g.size());
  for (const Vector& gi : batch_gradients) mean += gi;
  mean /= static_cast<double>(b);

  double trace = 0.0;
  for (const Vector& gi : batch_gradients) trace += (gi - mean).squaredNorm();
  trace /= static_cast<double>(b - 1);

  NormTestResult res;
  res.phi = trace / static_cast<double>(b);
  res.pass = res.phi <= chi * chi * g.squaredNorm();
  return res;
}

}  // namespace stochopt
