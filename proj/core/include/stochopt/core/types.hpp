#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>

namespace stochopt {

// Parameter vectors are dense 64-bit vectors of fixed dimension d.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

using index_t = std::int64_t;

inline bool all_finite(const Vector& v) {
  return v.allFinite();
}

// Coordinates beyond this magnitude are treated as diverged even before
// they overflow to inf; keeps objective evaluations representable.
inline constexpr double kDivergenceCoordLimit = 1e154;
inline constexpr double kDivergenceValueLimit = 1e12;

}  // namespace stochopt
