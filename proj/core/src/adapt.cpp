#include "linksel/adapt.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace linksel {

void check_divergence(const Eigen::VectorXd& psi, int node, long iteration) {
  if (!psi.allFinite() || psi.norm() > kDivergenceNormLimit) {
    throw DivergenceError("divergence at node " + std::to_string(node) + ", iteration " +
                          std::to_string(iteration) + ": local estimate norm " +
                          (psi.allFinite() ? std::to_string(psi.norm()) : "non-finite"));
  }
}

Eigen::VectorXd LmsAdapter::adapt(const Eigen::VectorXd& w, const Eigen::VectorXd& x,
                                  double d) const {
  const double e = d - w.dot(x);
  return w + mu_ * e * x;
}

RlsAdapter::RlsAdapter(int m, double lambda, double delta) : lambda_(lambda), delta_(delta) {
  if (lambda <= 0.0 || lambda > 1.0) throw std::invalid_argument("rls: lambda must be in (0, 1]");
  if (delta <= 0.0) throw std::invalid_argument("rls: delta must be positive");
  P_ = Eigen::MatrixXd::Identity(m, m) / delta_;
}

void RlsAdapter::reset() {
  P_ = Eigen::MatrixXd::Identity(P_.rows(), P_.cols()) / delta_;
}

Eigen::VectorXd RlsAdapter::adapt(const Eigen::VectorXd& w, const Eigen::VectorXd& x, double d) {
  const Eigen::VectorXd px = P_ * x;
  const double denom = lambda_ + x.dot(px);
  const Eigen::VectorXd gain = px / denom;
  const double e = d - w.dot(x);
  const Eigen::VectorXd psi = w + gain * e;
  P_ = (P_ - gain * px.transpose()) / lambda_;
  // Guard against symmetry drift, a classic failure of the rank-1 update.
  P_ = 0.5 * (P_ + P_.transpose()).eval();
  return psi;
}

double stability_bound(const Eigen::MatrixXd& R) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
  if (es.info() != Eigen::Success)
    throw std::invalid_argument("stability_bound: eigendecomposition failed");
  const double lmax = es.eigenvalues().maxCoeff();
  if (es.eigenvalues().minCoeff() < -1e-10 * std::abs(lmax))
    throw std::invalid_argument("stability_bound: R must be positive semidefinite");
  return 2.0 / lmax;
}

}  // namespace linksel
