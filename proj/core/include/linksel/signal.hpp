#pragma once

#include <Eigen/Dense>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "linksel/graph.hpp"

namespace linksel {

// True-parameter trajectory: static, or first-order Markov
// w0(i+1) = beta * w0(i) + z(i), z ~ N(0, sigma_z2 * I).
struct ParameterProcess {
  enum class Mode { Static, Markov };
  Mode mode = Mode::Static;
  double beta = 1.0;
  double sigma_z2 = 0.0;

  void step(Eigen::VectorXd& omega0, std::mt19937_64& rng) const;
};

// Per-node AR(1) regressor stream with unit stationary variance:
// x(i) = alpha * x(i-1) + sqrt(1 - alpha^2) * u(i), u ~ N(0,1).
// The regressor vector is the length-M sliding window of the stream.
class RegressorStream {
 public:
  RegressorStream(int m, double alpha, std::mt19937_64& rng);
  // Advances one sample and returns the window [x(i), ..., x(i-M+1)].
  const Eigen::VectorXd& next(std::mt19937_64& rng);

 private:
  double alpha_;
  double innov_;
  Eigen::VectorXd window_;
  std::normal_distribution<double> gauss_;
};

// d = w0^T x + n, n ~ N(0, noise_var).
double measure(const Eigen::VectorXd& omega0, const Eigen::VectorXd& x,
               double noise_var, std::mt19937_64& rng);

// IEEE 14-bus DC state-estimation model: one scalar measurement per bus,
// linear in the 14 phase angles.
struct GridModel {
  int buses = 0;
  std::vector<std::pair<int, int>> branches;  // 0-based

  // Branch-list file with 1-based bus pairs; see docs/file_formats.md.
  static GridModel load(const std::string& path);

  // Bus connectivity graph (for the combination step).
  Graph graph() const;

  // Per-bus measurement rows (buses x buses). Each bus k measures its net
  // DC power injection (unit branch susceptance) plus its own angle:
  // row k has degree(k)+1 on the diagonal and -1 per neighbor. A pure
  // injection matrix equals the graph Laplacian, which annihilates any
  // uniform angle profile; the own-angle term provides the phase reference
  // that makes the system observable. With normalize=true each row is
  // scaled to unit Euclidean norm (used by the shipped grid scenario to
  // equalize per-bus excitation).
  Eigen::MatrixXd jacobians(bool normalize = false) const;
};

}  // namespace linksel
