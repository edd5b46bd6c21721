#pragma once

#include <vector>

#include "stochopt/core/types.hpp"

namespace stochopt {

enum class RateKind { Linear, Sublinear };

// Fitted convergence rate from a gap trajectory.  Linear fits log(gap)
// against k by least squares (contraction = exp(slope)); sublinear fits
// log(gap) against log(k), reporting gap ~= constant / k^exponent.
struct RateEstimate {
  RateKind kind = RateKind::Linear;
  double contraction = 0.0;
  double constant = 0.0;
  double exponent = 0.0;
  double fit_residual = 0.0;
  index_t window_begin = 0;  // first k used (1-based)
  index_t window_end = 0;    // last k used
};

// gaps[j] is the optimality gap at iteration j+1.  Uses the trailing
// `window` records; nonpositive gaps (below reference accuracy) truncate
// the usable range to the prefix before them.  Requires at least 10
// usable records.
RateEstimate estimate_rate(const std::vector<double>& gaps, index_t window,
                           RateKind kind);

}  // namespace stochopt
