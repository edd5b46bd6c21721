#include "stochopt/problems/quartic2d.hpp"

#include <algorithm>
#include <stdexcept>

namespace stochopt {

Quartic2dProblem::Quartic2dProblem(double noise_magnitude, double radius)
    : noise_magnitude_(noise_magnitude), radius_(radius) {
  if (!(radius_ >= 1.0)) {
    throw std::invalid_argument("quartic2d: radius must cover the minima");
  }
}

double Quartic2dProblem::component_value(const Vector& w, index_t) const {
  double a = w[0] * w[0] - 1.0;
  return a * a + w[1] * w[1];
}

void Quartic2dProblem::add_component_gradient(const Vector& w, index_t,
                                              Vector& acc) const {
  acc[0] += 4.0 * w[0] * (w[0] * w[0] - 1.0);
  acc[1] += 2.0 * w[1];
}

Vector Quartic2dProblem::hessian_vector_product(const Vector& w,
                                                std::span<const index_t>,
                                                const Vector& v) const {
  Vector out(2);
  out[0] = (12.0 * w[0] * w[0] - 4.0) * v[0];
  out[1] = 2.0 * v[1];
  return out;
}

double Quartic2dProblem::lipschitz_bound() const {
  return std::max(12.0 * radius_ * radius_ - 4.0, 2.0);
}

bool Quartic2dProblem::project_to_domain(Vector& w) const {
  bool moved = false;
  for (int i = 0; i < 2; ++i) {
    double clamped = std::clamp(w[i], -radius_, radius_);
    if (clamped != w[i]) {
      w[i] = clamped;
      moved = true;
    }
  }
  return moved;
}

}  // namespace stochopt
