#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

namespace linksel {

// Minimum mean-square error of the Wiener solution:
// J_min = sigma_d^2 - p^T R^{-1} p.
double mmse(double sigma_d2, const Eigen::VectorXd& p, const Eigen::MatrixXd& R);

// Effective steady-state combining weight of neighbor l into node k
// (selection indicator times combining coefficient for ES, adjusted
// coefficient for SI, plain Metropolis weight for fixed diffusion).
using EffectiveWeights = std::vector<std::map<int, double>>;  // [k][l] -> weight

struct TheoryOptions {
  // Closed-form per-mode fixed point treats each node's K independently
  // (the display-equation reading). The coupled alternative solves the
  // small linear system over all nodes' K values jointly, approximating
  // cross terms K_{l,q} by (K_l + K_q)/2.
  bool coupled = false;
  // Include cross products of the Wiener errors e_{0l} e_{0q} (l != q) in
  // the numerator. Default off: regressors and noise are spatially
  // independent, so the cross products average to zero.
  bool cross_e0 = false;
  // Scale the EMSE as M^2 * K instead of M * K (sum over modes times a
  // literal extra factor of M). Off by default; with equal per-mode values
  // the EMSE is the sum over the M modes, i.e. M * K.
  bool emse_extra_m = false;
};

// Per-mode steady-state EMSE factor K_k for the LMS family, white
// regressors with variance sx2 (all modes equal). `aw` maps neighbor id ->
// effective weight for node k; `jmin[l]` is node l's MMSE.
// Throws std::domain_error on a nonpositive denominator (unstable
// configuration).
double k_steady_lms(const std::map<int, double>& aw, double mu,
                    const std::vector<double>& jmin, double sx2, bool cross_e0);

// Coupled variant: solves for all nodes' K values jointly.
Eigen::VectorXd k_steady_lms_coupled(const EffectiveWeights& eff, double mu,
                                     const std::vector<double>& jmin, double sx2);

// Per-mode EMSE factor for the RLS family at time index i (valid for
// i > M + 1): E[Phi^{-1}] ~ R^{-1}/(i - M) gives factors 1/(i-M) in the
// numerator and (1 - 1/(i-M))^2 in the denominator.
double k_steady_rls(const std::map<int, double>& aw, double i, int m,
                    const std::vector<double>& jmin, double sx2);

// For RLS with forgetting factor lambda < 1 the estimator never averages
// more than an effective window of 1/(1-lambda) samples; evaluating the
// time-indexed prediction at this index models the persistent steady
// state.
inline double rls_effective_index(int m, double lambda) {
  return static_cast<double>(m) + 1.0 / (1.0 - lambda);
}

// Predicted MSE: J = J_min + EMSE(+ tracking term M sx2 trQ).
// EMSE = M * K * sx2 (or M^2 * K * sx2 with emse_extra_m).
double predict_mse(double k_value, double jmin, int m, double sx2, double tr_q,
                   bool emse_extra_m = false);

// Asymptotic SI shrinkage step h = rho*eps / (1 + eps*|e0|), where |e0| is
// the converged error magnitude. With the convergence assumption the error
// power equals the noise floor, so |e0| = sqrt(J_min) by default;
// use_jmin_literal plugs J_min itself in (documented switch).
double si_asymptotic_h(double rho, double eps, double jmin, bool use_jmin_literal = false);

struct ComplexityCount {
  long long multiplications = 0;
  long long additions = 0;
  long long divisions = 0;
};

enum class AlgorithmId { DiffLms, DiffRls, EsLms, EsRls, SiLms, SiRls, LmsAdapt, RlsAdapt };

// Closed-form per-node per-instant operation counts. T is |N_k| (node
// included), t the subset size considered by the exhaustive search, nk
// = |N_k| for the sparsity-inspired algorithms.
ComplexityCount complexity_counts(AlgorithmId alg, int m, int T = 0, int t = 0, int nk = 0);

// Exact binomial coefficient (used by the complexity formulas).
long long binomial(int n, int k);

}  // namespace linksel
