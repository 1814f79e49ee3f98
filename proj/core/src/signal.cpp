#include "linksel/signal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace linksel {

void ParameterProcess::step(Eigen::VectorXd& omega0, std::mt19937_64& rng) const {
  if (mode == Mode::Static) return;
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double sz = std::sqrt(sigma_z2);
  for (Eigen::Index j = 0; j < omega0.size(); ++j) omega0[j] = beta * omega0[j] + sz * gauss(rng);
}

RegressorStream::RegressorStream(int m, double alpha, std::mt19937_64& rng)
    : alpha_(alpha), innov_(std::sqrt(1.0 - alpha * alpha)), window_(m), gauss_(0.0, 1.0) {
  if (std::abs(alpha) >= 1.0)
    throw std::invalid_argument("regressor: |alpha| must be < 1");
  // Stationary start: oldest sample from the stationary marginal N(0,1),
  // then the recursion fills the rest of the window.
  window_[m - 1] = gauss_(rng);
  for (int j = m - 2; j >= 0; --j) window_[j] = alpha_ * window_[j + 1] + innov_ * gauss_(rng);
}

const Eigen::VectorXd& RegressorStream::next(std::mt19937_64& rng) {
  const double xn = alpha_ * window_[0] + innov_ * gauss_(rng);
  for (Eigen::Index j = window_.size() - 1; j > 0; --j) window_[j] = window_[j - 1];
  window_[0] = xn;
  return window_;
}

double measure(const Eigen::VectorXd& omega0, const Eigen::VectorXd& x, double noise_var,
               std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  return omega0.dot(x) + std::sqrt(noise_var) * gauss(rng);
}

GridModel GridModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("grid: cannot open " + path);
  GridModel g;
  std::string line;
  int max_bus = 0;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    int a, b;
    if (ss >> a) {
      if (!(ss >> b)) throw std::invalid_argument("grid: malformed branch line in " + path);
      if (a < 1 || b < 1) throw std::invalid_argument("grid: bus indices are 1-based");
      g.branches.emplace_back(a - 1, b - 1);
      max_bus = std::max({max_bus, a, b});
    }
  }
  if (g.branches.empty()) throw std::invalid_argument("grid: no branches in " + path);
  g.buses = max_bus;
  return g;
}

Graph GridModel::graph() const { return Graph(buses, branches); }

Eigen::MatrixXd GridModel::jacobians(bool normalize) const {
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(buses, buses);
  std::vector<int> deg(buses, 0);
  for (auto [a, b] : branches) {
    if (a >= buses || b >= buses) throw std::invalid_argument("grid: branch bus out of range");
    X(a, b) -= 1.0;
    X(b, a) -= 1.0;
    ++deg[a];
    ++deg[b];
  }
  for (int k = 0; k < buses; ++k) X(k, k) = deg[k] + 1.0;
  if (normalize) {
    for (int k = 0; k < buses; ++k) X.row(k) /= X.row(k).norm();
  }
  return X;
}

}  // namespace linksel
