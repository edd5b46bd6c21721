#include "stochopt/problems/synthetic.hpp"

#include <Eigen/QR>
#include <cmath>

#include "stochopt/problems/linear_loss.hpp"

namespace stochopt {

namespace {

SparseRow dense_row(const Vector& x) {
  SparseRow r;
  r.idx.reserve(static_cast<std::size_t>(x.size()));
  r.val.reserve(static_cast<std::size_t>(x.size()));
  for (int j = 0; j < x.size(); ++j) {
    if (x[j] != 0.0) {
      r.idx.push_back(j);
      r.val.push_back(x[j]);
    }
  }
  return r;
}

}  // namespace

Dataset make_logistic_dataset(index_t n, int d, std::uint64_t seed,
                              double row_norm, double feature_decay) {
  RandomStream stream(seed);
  Substream rng = stream.at(0, Purpose::DataSynthesis);

  Vector scale = Vector::Ones(d);
  if (feature_decay < 1.0 && d > 1) {
    for (int j = 0; j < d; ++j) {
      scale[j] = std::pow(feature_decay,
                          static_cast<double>(j) / static_cast<double>(d - 1));
    }
  }

  Vector w_true(d);
  for (int j = 0; j < d; ++j) w_true[j] = rng.normal();
  if (feature_decay < 1.0) {
    // Uniform per-feature signal with margins of a few units, so the
    // labels are strongly (not perfectly) separable regardless of the
    // decay profile.
    for (int j = 0; j < d; ++j) {
      w_true[j] = (w_true[j] > 0 ? 2.0 : -2.0) / scale[j];
    }
  } else {
    w_true *= 4.0 / w_true.norm();
  }

  Dataset ds;
  ds.n = n;
  ds.d = d;
  ds.rows.reserve(static_cast<std::size_t>(n));
  ds.labels.reserve(static_cast<std::size_t>(n));
  Vector x(d);
  for (index_t i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) x[j] = rng.normal();
    x *= row_norm / x.norm();
    x = x.cwiseProduct(scale);
    double p = sigmoid(x.dot(w_true));
    double y = rng.uniform() < p ? 1.0 : -1.0;
    ds.rows.push_back(dense_row(x));
    ds.labels.push_back(y);
  }
  return ds;
}

Dataset make_regression_dataset(index_t n, int d, std::uint64_t seed,
                                double noise_sd, int sparsity_of_truth) {
  RandomStream stream(seed);
  Substream rng = stream.at(0, Purpose::DataSynthesis);

  Vector w_true = Vector::Zero(d);
  int k = sparsity_of_truth > 0 ? sparsity_of_truth : d;
  for (int j = 0; j < k && j < d; ++j) w_true[j] = rng.normal();

  Dataset ds;
  ds.n = n;
  ds.d = d;
  ds.rows.reserve(static_cast<std::size_t>(n));
  ds.labels.reserve(static_cast<std::size_t>(n));
  Vector x(d);
  for (index_t i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) x[j] = rng.normal();
    ds.rows.push_back(dense_row(x));
    ds.labels.push_back(x.dot(w_true) + noise_sd * rng.normal());
  }
  return ds;
}

QuadraticEnsembleProblem make_spd_quadratic(int d, double c, double L,
                                            std::uint64_t seed,
                                            double noise_magnitude) {
  RandomStream stream(seed);
  Substream rng = stream.at(1, Purpose::DataSynthesis);

  Vector spectrum(d);
  spectrum[0] = c;
  spectrum[d - 1] = L;
  for (int j = 1; j + 1 < d; ++j) {
    double t = rng.uniform();
    spectrum[j] = c * std::pow(L / c, t);
  }

  Matrix G(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) G(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix U = qr.householderQ();

  Matrix Q = U * spectrum.asDiagonal() * U.transpose();
  Q = 0.5 * (Q + Q.transpose());  // enforce exact symmetry
  return QuadraticEnsembleProblem::single(std::move(Q), Vector::Zero(d),
                                          noise_magnitude);
}

}  // namespace stochopt
