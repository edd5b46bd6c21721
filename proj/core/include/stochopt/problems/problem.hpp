#pragma once

#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "stochopt/core/errors.hpp"
#include "stochopt/core/types.hpp"

namespace stochopt {

enum class GnVariant { Plain, Generalized, LogLossFisher };

class LinearLossProblem;

// A finite-sum objective F(w) = (1/n) sum_i f_i(w) exposing component
// oracles, curvature-vector products and whatever constants are known
// analytically.  Problems are immutable after construction; all oracle
// calls are read-only and safe to invoke concurrently.  Batch reductions
// accumulate in index order so results are bitwise reproducible.
class Problem {
 public:
  Problem() = default;
  virtual ~Problem() = default;
  // The index cache and its guard are per-object scratch; copies and
  // moves start with an empty cache.
  Problem(const Problem&) noexcept {}
  Problem(Problem&&) noexcept {}
  Problem& operator=(const Problem&) noexcept { return *this; }
  Problem& operator=(Problem&&) noexcept { return *this; }

  virtual int dim() const = 0;
  virtual index_t num_components() const = 0;

  virtual double component_value(const Vector& w, index_t i) const = 0;
  virtual void add_component_gradient(const Vector& w, index_t i,
                                      Vector& acc) const = 0;
  Vector component_gradient(const Vector& w, index_t i) const;

  virtual double batch_value(const Vector& w,
                             std::span<const index_t> batch) const;
  virtual Vector batch_gradient(const Vector& w,
                                std::span<const index_t> batch) const;
  double full_value(const Vector& w) const;
  Vector full_gradient(const Vector& w) const;

  // (1/|batch|) sum_i hess(f_i)(w) * v, matrix-free.
  virtual Vector hessian_vector_product(const Vector& w,
                                        std::span<const index_t> batch,
                                        const Vector& v) const = 0;

  // Gauss-Newton / generalized Gauss-Newton / gradient-outer-product
  // operators; throws CapabilityError for unsupported variants.
  virtual Vector gauss_newton_vector_product(const Vector& w,
                                             std::span<const index_t> batch,
                                             const Vector& v,
                                             GnVariant variant) const;

  // Diagonal of the batch curvature matrix (Gauss-Newton where available,
  // exact Hessian otherwise); used by diagonal scaling methods.
  virtual Vector curvature_diagonal(const Vector& w,
                                    std::span<const index_t> batch) const;

  // Upper bound on the Lipschitz constant of grad F.
  virtual double lipschitz_bound() const = 0;
  virtual std::optional<double> strong_convexity() const { return std::nullopt; }
  virtual std::optional<double> known_optimal_value() const { return std::nullopt; }
  virtual const Vector* known_minimizer() const { return nullptr; }

  // Additive isotropic gradient-noise oracle: magnitude M means a
  // single-sample stochastic gradient carries noise with covariance
  // (M/d) I, so E||noise||^2 = M.  Zero disables the oracle.
  virtual double noise_magnitude() const { return 0.0; }

  virtual const LinearLossProblem* as_linear_loss() const { return nullptr; }

  // {0,...,n-1}; cached so full_* calls avoid rebuilding the index list.
  std::span<const index_t> all_indices() const;

 private:
  mutable std::once_flag all_indices_once_;
  mutable std::vector<index_t> all_indices_;
};

}  // namespace stochopt
