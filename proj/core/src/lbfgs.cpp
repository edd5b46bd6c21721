#include "stochopt/so/lbfgs.hpp"

#include <stdexcept>

namespace stochopt {

CurvaturePairStore::CurvaturePairStore(index_t memory) : memory_(memory) {
  if (memory_ < 1) throw std::invalid_argument("pair store: memory must be >= 1");
}

bool CurvaturePairStore::offer(Vector s, Vector v) {
  if (!(s.dot(v) > 0.0)) {
    ++skipped_;
    return false;
  }
  pairs_.push_back(CurvaturePair{std::move(s), std::move(v)});
  if (static_cast<index_t>(pairs_.size()) > memory_) pairs_.pop_front();
  return true;
}

double CurvaturePairStore::initial_scaling() const {
  if (pairs_.empty()) return 1.0;
  const CurvaturePair& last = pairs_.back();
  return last.s.dot(last.v) / last.v.squaredNorm();
}

Vector two_loop_direction(const CurvaturePairStore& store, const Vector& g) {
  const index_t m = store.size();
  if (m == 0) return g;

  Vector q = g;
  std::vector<double> alpha(static_cast<std::size_t>(m));
  std::vector<double> rho(static_cast<std::size_t>(m));
  for (index_t j = m - 1; j >= 0; --j) {
    const CurvaturePair& p = store.pair(j);
    auto jj = static_cast<std::size_t>(j);
    rho[jj] = 1.0 / p.s.dot(p.v);
    alpha[jj] = rho[jj] * p.s.dot(q);
    q -= alpha[jj] * p.v;
  }
  Vector r = store.initial_scaling() * q;
  for (index_t j = 0; j < m; ++j) {
    const CurvaturePair& p = store.pair(j);
    auto jj = static_cast<std::size_t>(j);
    double beta = rho[jj] * p.v.dot(r);
    r += (alpha[jj] - beta) * p.s;
  }
  return r;
}

LbfgsHessianOperator::LbfgsHessianOperator(const CurvaturePairStore& store) {
  inv_gamma_ = 1.0 / store.initial_scaling();
  const index_t m = store.size();
  if (m > 0) dim_ = static_cast<int>(store.pair(0).s.size());
  s_.reserve(static_cast<std::size_t>(m));
  v_.reserve(static_cast<std::size_t>(m));
  for (index_t j = 0; j < m; ++j) {
    const CurvaturePair& p = store.pair(j);
    // B_j s_j via the operator built from the pairs stored so far.
    Vector bs = apply(p.s);
    s_.push_back(p.s);
    v_.push_back(p.v);
    bs_.push_back(bs);
    sbs_.push_back(p.s.dot(bs));
    vs_.push_back(p.v.dot(p.s));
  }
}

Vector LbfgsHessianOperator::apply(const Vector& x) const {
  Vector u = inv_gamma_ * x;
  for (std::size_t l = 0; l < s_.size(); ++l) {
    u += -bs_[l] * (s_[l].dot(u)) / sbs_[l] + v_[l] * (v_[l].dot(x)) / vs_[l];
  }
  return u;
}

}  // namespace stochopt
