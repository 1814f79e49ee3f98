#pragma once

#include <Eigen/Dense>
#include <vector>

#include "linksel/graph.hpp"

namespace linksel {

struct SiParams {
  double rho = 0.0;  // shrinkage intensity
  double eps = 10.0; // shrinkage magnitude
};

// Fixed diffusion: w_k = sum_l c_kl psi_l. `estimates` holds one column per
// member of the participating set, in the same order as `weights`.
Eigen::VectorXd combine_fixed(const Eigen::VectorXd& weights, const Eigen::MatrixXd& estimates);

// Precomputed exhaustive-search tables for one node: every candidate set
// and its Metropolis weights expressed over neighbor positions, so the
// per-step search is a single matrix-vector product.
struct EsTables {
  std::vector<std::vector<int>> sets;  // sorted member lists, lexicographic
  Eigen::MatrixXd weights;             // sets.size() x |N_k|, zero for non-members
};
EsTables build_es_tables(const Graph& g, int k);

// Error pattern per candidate set: e_s = d - (sum_l c_sl psi_l)^T x =
// d - weights.row(s) . proj, where proj[j] = psi_j^T x over neighbor
// positions j. Returns the index of the set minimizing |e_s|; ties broken
// by enumeration (lexicographic) order, first minimum wins.
int es_select(const EsTables& tables, const Eigen::VectorXd& proj, double d);

struct SiModifiedErrors {
  Eigen::VectorXd modified;  // +max|e| at jmax, -min|e| at jmin, zeros elsewhere
  double xi_min = 0.0;       // min |e|
  int jmax = -1;
  int jmin = -1;
};

// Sparsity-inspired error editing: keep the largest-magnitude entry as
// +|e|, the smallest as -|e|, zero the rest. jmax is the first index
// attaining max|e|; jmin is the first index attaining min|e| among the
// remaining positions (so for two equal-magnitude entries the lower index
// is penalized and the higher rewarded). Requires >= 2 entries.
SiModifiedErrors si_modify_errors(const Eigen::VectorXd& errors);

// Adjusted combining weights: subtract h = rho*eps/(1 + eps*xi_min) at the
// penalized position and add it at the rewarded one. The penalty and
// reward are applied positionally with equal magnitude so the weights
// always sum to one; if the penalized weight would go negative it is
// clamped to zero and the deficit credited to the rewarded position.
Eigen::VectorXd si_adjust_weights(const Eigen::VectorXd& base, const SiModifiedErrors& mod,
                                  const SiParams& params);

}  // namespace linksel
