#include "stochopt/core/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace stochopt {

StepsizeSchedule StepsizeSchedule::fixed(double abar) {
  if (!(abar > 0.0)) throw std::invalid_argument("fixed stepsize must be positive");
  return StepsizeSchedule(Kind::Fixed, abar, 0.0);
}

StepsizeSchedule StepsizeSchedule::diminishing(double beta, double gamma) {
  if (!(beta > 0.0)) throw std::invalid_argument("diminishing schedule: beta must be positive");
  if (!(gamma > 0.0)) throw std::invalid_argument("diminishing schedule: gamma must be positive");
  return StepsizeSchedule(Kind::Diminishing, beta, gamma);
}

StepsizeSchedule StepsizeSchedule::sqrt_diminishing(double beta, double gamma) {
  if (!(beta > 0.0)) throw std::invalid_argument("sqrt schedule: beta must be positive");
  if (!(gamma > 0.0)) throw std::invalid_argument("sqrt schedule: gamma must be positive");
  return StepsizeSchedule(Kind::SqrtDiminishing, beta, gamma);
}

double StepsizeSchedule::at(index_t k) const {
  switch (kind_) {
    case Kind::Fixed:
      return a_;
    case Kind::Diminishing:
      return a_ / (b_ + static_cast<double>(k));
    case Kind::SqrtDiminishing:
      return a_ / std::sqrt(b_ + static_cast<double>(k));
  }
  return a_;
}

double recommended_beta(double c, double mu) {
  if (!(c > 0.0) || !(mu > 0.0)) {
    throw std::invalid_argument("recommended_beta requires c > 0 and mu > 0");
  }
  return 2.0 / (c * mu);
}

}  // namespace stochopt
