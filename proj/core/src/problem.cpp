#include "stochopt/problems/problem.hpp"

#include <numeric>

namespace stochopt {

Vector Problem::component_gradient(const Vector& w, index_t i) const {
  Vector g = Vector::Zero(dim());
  add_component_gradient(w, i, g);
  return g;
}

double Problem::batch_value(const Vector& w,
                            std::span<const index_t> batch) const {
  double s = 0.0;
  for (index_t i : batch) s += component_value(w, i);
  return s / static_cast<double>(batch.size());
}

Vector Problem::batch_gradient(const Vector& w,
                               std::span<const index_t> batch) const {
  Vector g = Vector::Zero(dim());
  for (index_t i : batch) add_component_gradient(w, i, g);
  g /= static_cast<double>(batch.size());
  return g;
}

double Problem::full_value(const Vector& w) const {
  return batch_value(w, all_indices());
}

Vector Problem::full_gradient(const Vector& w) const {
  return batch_gradient(w, all_indices());
}

Vector Problem::gauss_newton_vector_product(const Vector&,
                                            std::span<const index_t>,
                                            const Vector&, GnVariant) const {
  throw CapabilityError("problem does not support Gauss-Newton products");
}

Vector Problem::curvature_diagonal(const Vector&,
                                   std::span<const index_t>) const {
  throw CapabilityError("problem does not expose a curvature diagonal");
}

std::span<const index_t> Problem::all_indices() const {
  std::call_once(all_indices_once_, [this] {
    all_indices_.resize(static_cast<std::size_t>(num_components()));
    std::iota(all_indices_.begin(), all_indices_.end(), index_t{0});
  });
  return all_indices_;
}

}  // namespace stochopt
