#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace linksel {

// Raised when an adaptation step produces a non-finite or absurdly large
// local estimate; the simulation run is aborted with diagnostics.
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kDivergenceNormLimit = 1e9;

// Throws DivergenceError if psi has non-finite entries or huge norm.
void check_divergence(const Eigen::VectorXd& psi, int node, long iteration);

// LMS adaptation: psi = w + mu * x * (d - w^T x).
// Leaves w untouched; only the combiner writes w.
class LmsAdapter {
 public:
  explicit LmsAdapter(double mu) : mu_(mu) {}
  Eigen::VectorXd adapt(const Eigen::VectorXd& w, const Eigen::VectorXd& x, double d) const;
  double mu() const { return mu_; }

 private:
  double mu_;
};

// Exponentially weighted RLS with rank-1 inverse-correlation update.
// P(0) = I/delta; P is re-symmetrized after every step to prevent
// numerical drift, and kept per node.
class RlsAdapter {
 public:
  RlsAdapter(int m, double lambda, double delta);
  Eigen::VectorXd adapt(const Eigen::VectorXd& w, const Eigen::VectorXd& x, double d);
  void reset();
  const Eigen::MatrixXd& P() const { return P_; }
  double lambda() const { return lambda_; }

 private:
  double lambda_;
  double delta_;
  Eigen::MatrixXd P_;
};

// Largest stable LMS step size, 2 / lambda_max(R).
double stability_bound(const Eigen::MatrixXd& R);

}  // namespace linksel
