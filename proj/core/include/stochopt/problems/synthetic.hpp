#pragma once

#include "stochopt/core/rng.hpp"
#include "stochopt/problems/dataset.hpp"
#include "stochopt/problems/quadratic.hpp"

namespace stochopt {

// Binary classification data: dense Gaussian feature rows rescaled to
// ||x_i|| = row_norm, labels sampled from the logistic model of a planted
// parameter vector.  Fully determined by `seed`.
//
// feature_decay < 1 scales feature j by decay^(j/(d-1)), producing the
// ill-conditioned, strongly separable geometry of text data (frequent and
// rare features); the planted parameter compensates the decay so every
// feature carries signal and the minimizer lies far along the weak
// directions.  The default keeps features isotropic.
Dataset make_logistic_dataset(index_t n, int d, std::uint64_t seed,
                              double row_norm = 1.0,
                              double feature_decay = 1.0);

// Regression data y = x^T w_true + noise_sd * eps for ridge/LASSO tests.
Dataset make_regression_dataset(index_t n, int d, std::uint64_t seed,
                                double noise_sd = 0.1,
                                int sparsity_of_truth = 0);

// Single SPD quadratic in dimension d whose spectrum is log-uniform in
// [c, L]; the extreme eigenvalues are exactly c and L.  Deterministic
// random rotation keyed by `seed`.
QuadraticEnsembleProblem make_spd_quadratic(int d, double c, double L,
                                            std::uint64_t seed,
                                            double noise_magnitude = 0.0);

}  // namespace stochopt
