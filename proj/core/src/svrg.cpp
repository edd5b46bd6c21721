#include "stochopt/nr/svrg.hpp"

#include <stdexcept>

#include "stochopt/core/errors.hpp"
#include "stochopt/sg/sg.hpp"

namespace stochopt {

Vector svrg_inner_direction(const Problem& problem, const Vector& wt,
                            const Vector& w_anchor, const Vector& anchor_grad,
                            index_t i) {
  Vector g = problem.component_gradient(wt, i);
  g -= problem.component_gradient(w_anchor, i);
  g += anchor_grad;
  return g;
}

Vector svrg_outer(const Problem& problem, const Vector& w_k, double alpha,
                  index_t m, SvrgOption option, const RandomStream& stream,
                  index_t k, index_t& adp) {
  if (!(alpha > 0.0)) throw std::invalid_argument("svrg: alpha must be positive");
  if (m < 1) throw std::invalid_argument("svrg: m must be >= 1");
  if (problem.noise_magnitude() > 0.0) {
    throw CapabilityError("svrg is a finite-sum method; disable the noise oracle");
  }
  const index_t n = problem.num_components();
  const auto nu = static_cast<std::uint64_t>(n);

  Vector anchor_grad = problem.full_gradient(w_k);
  adp += n;

  Substream pick = stream.at(k, Purpose::InnerIndex);
  Vector wt = w_k;
  Vector sum = Vector::Zero(w_k.size());
  Vector chosen;
  index_t chosen_j = 0;
  if (option == SvrgOption::RandomIterate) {
    chosen_j = static_cast<index_t>(
        stream.at(k, Purpose::IterateChoice).bounded(static_cast<std::uint64_t>(m)));
  }

  for (index_t j = 0; j < m; ++j) {
    auto i = static_cast<index_t>(pick.bounded(nu));
    Vector dir = svrg_inner_direction(problem, wt, w_k, anchor_grad, i);
    adp += 2;
    Vector before = wt;
    wt -= alpha * dir;
    check_finite_step(before, wt, k);
    switch (option) {
      case SvrgOption::LastIterate:
        break;
      case SvrgOption::InnerAverage:
        sum += wt;
        break;
      case SvrgOption::RandomIterate:
        if (j == chosen_j) chosen = wt;
        break;
    }
  }

  switch (option) {
    case SvrgOption::LastIterate:
      return wt;
    case SvrgOption::InnerAverage:
      return sum / static_cast<double>(m);
    case SvrgOption::RandomIterate:
      return chosen;
  }
  return wt;
}

double svrg_rate_constant(double alpha, index_t m, double c, double L) {
  double denom = 1.0 - 2.0 * alpha * L;
  if (!(denom > 0.0)) {
    throw std::invalid_argument("svrg_rate_constant: need alpha < 1/(2L)");
  }
  return (1.0 / denom) *
         (1.0 / (static_cast<double>(m) * c * alpha) + 2.0 * L * alpha);
}

}  // namespace stochopt
