#pragma once

#include "stochopt/core/types.hpp"

namespace stochopt {

// Stepsize rules.  Per-coordinate accumulator-driven rules (AdaGrad,
// RMSprop, diagonal scalings) live in the solvers that own the accumulator.
class StepsizeSchedule {
 public:
  enum class Kind { Fixed, Diminishing, SqrtDiminishing };

  // alpha_k = abar for all k.
  static StepsizeSchedule fixed(double abar);

  // alpha_k = beta / (gamma + k); satisfies sum alpha = inf and
  // sum alpha^2 < beta^2 * pi^2/6 by construction.
  static StepsizeSchedule diminishing(double beta, double gamma);

  // alpha_k = beta / sqrt(gamma + k); the long-step schedule used with
  // iterate averaging (sum alpha^2 diverges, deliberately).
  static StepsizeSchedule sqrt_diminishing(double beta, double gamma);

  double at(index_t k) const;

  Kind kind() const { return kind_; }
  double beta() const { return a_; }
  double gamma() const { return b_; }

 private:
  StepsizeSchedule(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

  Kind kind_;
  double a_;  // abar or beta
  double b_;  // gamma
};

// The stepsize constant the diminishing-rate theory recommends once the
// strong convexity product c*mu is known: beta = 2/(c*mu).
double recommended_beta(double c, double mu);

}  // namespace stochopt
