#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "linksel/analysis.hpp"
#include "linksel/combine.hpp"
#include "linksel/graph.hpp"
#include "linksel/signal.hpp"

namespace linksel {

enum class Policy { Fixed, Es, Si };
enum class AdaptKind { Lms, Rls };

std::string to_string(Policy p);
std::string to_string(AdaptKind a);
// "diff-lms", "es-rls", ... -> (policy, adapt); throws on unknown names.
std::pair<Policy, AdaptKind> parse_algorithm(const std::string& name);
std::string algorithm_name(Policy p, AdaptKind a);

// Fully resolved Monte-Carlo experiment description. Deterministic given
// `seed`: identical scenarios produce identical results byte for byte.
struct Scenario {
  Graph graph;
  int m = 10;          // parameter length
  long iters = 1000;   // time steps per run (must exceed m)
  int runs = 100;

  Policy policy = Policy::Fixed;
  AdaptKind adapt = AdaptKind::Lms;
  double mu = 0.045;      // LMS step size
  double lambda = 0.97;   // RLS forgetting factor
  double delta = 0.81;    // RLS init: P(0) = I/delta
  SiParams si;

  Eigen::VectorXd noise_var;       // per-node measurement noise variance
  Eigen::VectorXd link_noise_var;  // per-node broadcast link noise variance
                                   // (noise added to estimates *received from*
                                   // that node; 0 = ideal link)

  ParameterProcess param;

  // AR(1) regressor coefficients are drawn once per scenario, uniformly
  // from [alpha_min, alpha_max], keyed by the master seed (recorded in the
  // result). Set both to 0 for white regressors.
  double alpha_min = 0.0;
  double alpha_max = 0.5;

  // Deterministic per-node regressor rows (grid scenario); 0x0 when unused.
  Eigen::MatrixXd fixed_regressors;

  // Initial true parameter. Empty -> drawn N(0, I) once per scenario from
  // the master seed (shared by all runs and recorded in the result).
  Eigen::VectorXd omega0_init;

  std::uint64_t seed = 1;

  explicit Scenario(Graph g) : graph(std::move(g)) {}

  // Throws std::invalid_argument on structural errors; returns soft
  // warnings (e.g. LMS step size above the white-regressor stability
  // bound, which the shipped scenarios treat as advisory).
  std::vector<std::string> validate() const;
};

struct MseTrace {
  // Network-average MSE per iteration, averaged over runs then nodes.
  // `network_mse` uses the estimate after the combination step of the same
  // iteration, |d_k(i) - w_k(i)^T x_k(i)|^2; `network_mse_prior` uses the
  // previous iteration's estimate (the a-priori error the closed-form
  // analysis predicts).
  Eigen::VectorXd network_mse;
  Eigen::VectorXd network_mse_prior;
  Eigen::MatrixXd node_mse_prior;  // N x I
  Eigen::MatrixXd node_gap;        // N x I, sqrt(E ||w_k(i) - w0(i)||^2)
};

struct SelectionTrace {
  // Exhaustive search: per-node candidate tables, run-0 per-step chosen set
  // index, modal chosen set over the final 20% of all runs, and the
  // fraction of steps (final 20%) on which the chosen set changed.
  std::vector<EsTables> es_tables;
  std::vector<std::vector<int>> chosen_run0;  // [iter][node]
  std::vector<int> modal_set;                 // per node; -1 unless ES
  Eigen::VectorXd change_fraction;            // per node; 0 unless ES
  // Sparsity-inspired: per-node mean |e_kl| and mean adjusted weight per
  // neighbor position over the final 20%, plus the run-0 per-step adjusted
  // weights (one N x max|N_k| matrix per iteration) for trace export.
  Eigen::MatrixXd si_mean_abs_error;  // N x max|N_k|
  Eigen::MatrixXd si_mean_weights;    // N x max|N_k|
  std::vector<Eigen::MatrixXd> si_weights_run0;
};

struct SimResult {
  MseTrace trace;
  SelectionTrace selection;
  Eigen::VectorXd alphas;  // resolved AR(1) coefficients
  Eigen::VectorXd omega0;  // resolved initial true parameter
  std::vector<std::string> warnings;
  double steady_state_mse = 0.0;        // mean of final 10%, a-posteriori
  double steady_state_mse_prior = 0.0;  // mean of final 10%, a-priori

  static double to_db(double linear);
};

// Runs the full Monte-Carlo experiment: for each run, at every step all
// nodes adapt on local data, then all nodes combine their neighbors'
// (possibly link-noise corrupted) local estimates. Runs are sequential
// with a fixed reduction order so results are reproducible.
// Throws DivergenceError if any node's local estimate blows up.
SimResult run_scenario(const Scenario& s);

// Steady-state effective combining weights implied by a finished run:
// Metropolis weights over the modal selected set (ES), shrinkage-adjusted
// weights with the asymptotic h (SI), or plain Metropolis weights (fixed).
EffectiveWeights effective_weights(const Scenario& s, const SimResult& r,
                                   const TheoryOptions& opt = {});

struct TheoryReport {
  Eigen::VectorXd node_mse;  // predicted per-node steady-state MSE (linear)
  double network_mse = 0.0;  // mean over nodes (linear)
  double emse_term = 0.0;    // network-average EMSE component
  double tracking_term = 0.0;
};

// Closed-form steady-state (and tracking) MSE prediction for the
// scenario's algorithm, using the selection statistics from `r`.
TheoryReport compute_theory(const Scenario& s, const SimResult& r,
                            const TheoryOptions& opt = {});

struct SweepPoint {
  double snr_db = 0.0;
  double noise_var = 0.0;
  double sim_mse = 0.0;       // steady-state, a-priori (theory-comparable)
  double sim_mse_post = 0.0;  // steady-state, a-posteriori
  double theory_mse = 0.0;
  double gap_db = 0.0;  // 10log10(sim) - 10log10(theory), a-priori vs theory
};

// For each SNR (dB), sets every node's noise variance to sx2 / 10^(snr/10),
// runs the scenario, and reports steady-state MSE next to the closed-form
// prediction.
std::vector<SweepPoint> sweep_snr(const Scenario& base, const std::vector<double>& snr_db,
                                  const TheoryOptions& opt = {});

}  // namespace linksel
