#include "stochopt/harness/rate.hpp"

#include <cmath>
#include <stdexcept>

namespace stochopt {

RateEstimate estimate_rate(const std::vector<double>& gaps, index_t window,
                           RateKind kind) {
  // Truncate at the first nonpositive gap.
  std::size_t usable = gaps.size();
  for (std::size_t j = 0; j < gaps.size(); ++j) {
    if (!(gaps[j] > 0.0)) {
      usable = j;
      break;
    }
  }
  if (usable < 10) {
    throw std::invalid_argument("estimate_rate: need >= 10 positive gap records");
  }
  std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(window), usable);
  std::size_t begin = usable - count;

  // Least squares of y = log(gap) on x (k, or log k).
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t j = begin; j < usable; ++j) {
    double k = static_cast<double>(j + 1);
    double x = kind == RateKind::Linear ? k : std::log(k);
    double y = std::log(gaps[j]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double m = static_cast<double>(count);
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  double intercept = (sy - slope * sx) / m;

  double ss = 0.0;
  for (std::size_t j = begin; j < usable; ++j) {
    double k = static_cast<double>(j + 1);
    double x = kind == RateKind::Linear ? k : std::log(k);
    double r = std::log(gaps[j]) - (intercept + slope * x);
    ss += r * r;
  }

  RateEstimate est;
  est.kind = kind;
  est.fit_residual = std::sqrt(ss / m);
  est.window_begin = static_cast<index_t>(begin + 1);
  est.window_end = static_cast<index_t>(usable);
  if (kind == RateKind::Linear) {
    est.contraction = std::exp(slope);
  } else {
    est.exponent = -slope;
    est.constant = std::exp(intercept);
  }
  return est;
}

}  // namespace stochopt
