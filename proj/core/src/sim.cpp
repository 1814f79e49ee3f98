#include "linksel/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linksel/adapt.hpp"
#include "linksel/rng.hpp"

namespace linksel {

std::string to_string(Policy p) {
  switch (p) {
    case Policy::Fixed: return "diff";
    case Policy::Es: return "es";
    case Policy::Si: return "si";
  }
  return "?";
}

std::string to_string(AdaptKind a) { return a == AdaptKind::Lms ? "lms" : "rls"; }

std::string algorithm_name(Policy p, AdaptKind a) { return to_string(p) + "-" + to_string(a); }

std::pair<Policy, AdaptKind> parse_algorithm(const std::string& name) {
  const auto dash = name.find('-');
  if (dash != std::string::npos) {
    const std::string pol = name.substr(0, dash);
    const std::string ad = name.substr(dash + 1);
    Policy p;
    if (pol == "diff" || pol == "fixed") p = Policy::Fixed;
    else if (pol == "es") p = Policy::Es;
    else if (pol == "si") p = Policy::Si;
    else throw std::invalid_argument("unknown algorithm: " + name);
    if (ad == "lms") return {p, AdaptKind::Lms};
    if (ad == "rls") return {p, AdaptKind::Rls};
  }
  throw std::invalid_argument("unknown algorithm: " + name);
}

double SimResult::to_db(double linear) { return 10.0 * std::log10(linear); }

std::vector<std::string> Scenario::validate() const {
  std::vector<std::string> warnings;
  const int n = graph.size();
  if (m <= 0) throw std::invalid_argument("scenario: M must be positive");
  if (iters <= m) throw std::invalid_argument("scenario: iteration count must exceed M");
  if (runs < 1) throw std::invalid_argument("scenario: need at least one run");
  if (noise_var.size() != n)
    throw std::invalid_argument("scenario: noise_var must have one entry per node");
  if ((noise_var.array() < 0.0).any())
    throw std::invalid_argument("scenario: noise variances must be nonnegative");
  if (link_noise_var.size() != 0 && link_noise_var.size() != n)
    throw std::invalid_argument("scenario: link_noise_var must be empty or one entry per node");
  if (fixed_regressors.size() != 0 &&
      (fixed_regressors.rows() != n || fixed_regressors.cols() != m))
    throw std::invalid_argument("scenario: fixed_regressors must be N x M");
  if (omega0_init.size() != 0 && omega0_init.size() != m)
    throw std::invalid_argument("scenario: omega0_init must have length M");
  if (!graph.is_connected()) throw std::invalid_argument("scenario: graph must be connected");
  if (policy != Policy::Fixed) {
    graph.require_neighborhood_size(2);
    for (int k = 0; k < n; ++k) {
      if (graph.neighborhood_size(k) < 3) {
        warnings.push_back("node " + std::to_string(k) +
                           " has a single neighbor; link selection degenerates to the fixed "
                           "combiner there");
      }
    }
  }
  if (adapt == AdaptKind::Lms) {
    if (mu <= 0.0) throw std::invalid_argument("scenario: LMS step size must be positive");
    // Advisory white-regressor stability check (R = sigma_x^2 I = I).
    if (mu >= 2.0)
      warnings.push_back("LMS step size " + std::to_string(mu) +
                         " exceeds the white-regressor stability bound 2");
  } else {
    if (lambda <= 0.0 || lambda > 1.0)
      throw std::invalid_argument("scenario: RLS lambda must be in (0, 1]");
    if (delta <= 0.0) throw std::invalid_argument("scenario: RLS delta must be positive");
  }
  if (policy == Policy::Si && si.eps <= 0.0)
    throw std::invalid_argument("scenario: SI eps must be positive");
  if (policy == Policy::Si && si.rho < 0.0)
    throw std::invalid_argument("scenario: SI rho must be nonnegative");
  return warnings;
}

namespace {

struct NodeLayout {
  std::vector<int> nbrs;  // sorted, includes self
  int self_pos = 0;
  Eigen::VectorXd metropolis;  // over nbrs positions
};

}  // namespace

SimResult run_scenario(const Scenario& s) {
  SimResult result;
  result.warnings = s.validate();

  const int n = s.graph.size();
  const int m = s.m;
  const long iters = s.iters;
  const int runs = s.runs;
  const bool has_link_noise = s.link_noise_var.size() == n && s.link_noise_var.maxCoeff() > 0.0;
  const bool fixed_x = s.fixed_regressors.size() != 0;
  const long win0 = (4 * iters) / 5;  // final 20% window for selection stats
  const long ss0 = (9 * iters) / 10;  // final 10% window for steady state

  // Scenario-level resolution (shared by all runs): AR coefficients and the
  // initial true parameter.
  {
    auto rng = make_rng(s.seed, 0xA11CE, 0, Stream::Parameter);
    result.alphas = Eigen::VectorXd::Zero(n);
    std::uniform_real_distribution<double> unif(s.alpha_min, s.alpha_max);
    for (int k = 0; k < n; ++k) result.alphas[k] = unif(rng);
    if (s.omega0_init.size() != 0) {
      result.omega0 = s.omega0_init;
    } else {
      std::normal_distribution<double> gauss(0.0, 1.0);
      result.omega0 = Eigen::VectorXd::Zero(m);
      for (int j = 0; j < m; ++j) result.omega0[j] = gauss(rng);
    }
  }

  std::vector<NodeLayout> layout(n);
  int max_deg = 0;
  for (int k = 0; k < n; ++k) {
    layout[k].nbrs = s.graph.neighbors(k);
    layout[k].self_pos = static_cast<int>(
        std::lower_bound(layout[k].nbrs.begin(), layout[k].nbrs.end(), k) - layout[k].nbrs.begin());
    layout[k].metropolis = metropolis_weights(s.graph, layout[k].nbrs, k);
    max_deg = std::max(max_deg, static_cast<int>(layout[k].nbrs.size()));
  }

  SelectionTrace& sel = result.selection;
  sel.modal_set.assign(n, -1);
  sel.change_fraction = Eigen::VectorXd::Zero(n);
  sel.si_mean_abs_error = Eigen::MatrixXd::Zero(n, max_deg);
  sel.si_mean_weights = Eigen::MatrixXd::Zero(n, max_deg);
  std::vector<std::vector<long>> es_counts;  // [node][set] over final 20%
  Eigen::VectorXd es_changes = Eigen::VectorXd::Zero(n);
  long es_change_steps = 0;
  long si_steps = 0;
  if (s.policy == Policy::Es) {
    sel.es_tables.reserve(n);
    es_counts.resize(n);
    for (int k = 0; k < n; ++k) {
      sel.es_tables.push_back(build_es_tables(s.graph, k));
      es_counts[k].assign(sel.es_tables[k].sets.size(), 0);
    }
    sel.chosen_run0.assign(iters, std::vector<int>(n, 0));
  }
  if (s.policy == Policy::Si) {
    sel.si_weights_run0.assign(iters, Eigen::MatrixXd::Zero(n, max_deg));
  }

  MseTrace& tr = result.trace;
  tr.network_mse = Eigen::VectorXd::Zero(iters);
  tr.network_mse_prior = Eigen::VectorXd::Zero(iters);
  tr.node_mse_prior = Eigen::MatrixXd::Zero(n, iters);
  tr.node_gap = Eigen::MatrixXd::Zero(n, iters);

  std::normal_distribution<double> gauss(0.0, 1.0);

  for (int run = 0; run < runs; ++run) {
    auto rng_param = make_rng(s.seed, run, 0, Stream::Parameter);
    std::vector<std::mt19937_64> rng_x, rng_n, rng_link;
    std::vector<RegressorStream> streams;
    rng_x.reserve(n);
    rng_n.reserve(n);
    rng_link.reserve(n);
    streams.reserve(n);
    for (int k = 0; k < n; ++k) {
      rng_x.push_back(make_rng(s.seed, run, k, Stream::Regressor));
      rng_n.push_back(make_rng(s.seed, run, k, Stream::Noise));
      rng_link.push_back(make_rng(s.seed, run, k, Stream::Link));
      if (!fixed_x) streams.emplace_back(m, result.alphas[k], rng_x.back());
    }

    Eigen::VectorXd omega0 = result.omega0;
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(m, n);    // estimates, one column per node
    Eigen::MatrixXd Psi = Eigen::MatrixXd::Zero(m, n);  // local estimates
    Eigen::MatrixXd Tx = Eigen::MatrixXd::Zero(m, n);   // broadcast (possibly noisy) copies
    Eigen::MatrixXd X(m, n);
    Eigen::VectorXd d(n), e_prior(n);
    std::vector<RlsAdapter> rls;
    if (s.adapt == AdaptKind::Rls) {
      rls.reserve(n);
      for (int k = 0; k < n; ++k) rls.emplace_back(m, s.lambda, s.delta);
    }
    const LmsAdapter lms(s.mu);
    std::vector<int> prev_sel(n, -1);

    for (long i = 0; i < iters; ++i) {
      s.param.step(omega0, rng_param);
      for (int k = 0; k < n; ++k) {
        if (fixed_x) {
          X.col(k) = s.fixed_regressors.row(k).transpose();
        } else {
          X.col(k) = streams[k].next(rng_x[k]);
        }
        d[k] = omega0.dot(X.col(k)) + std::sqrt(s.noise_var[k]) * gauss(rng_n[k]);
        e_prior[k] = d[k] - W.col(k).dot(X.col(k));
      }
      tr.network_mse_prior[i] += e_prior.squaredNorm() / n;
      tr.node_mse_prior.col(i) += e_prior.cwiseAbs2();

      // Adaptation: every node updates on its own data only.
      for (int k = 0; k < n; ++k) {
        if (s.adapt == AdaptKind::Lms) {
          Psi.col(k) = lms.adapt(W.col(k), X.col(k), d[k]);
        } else {
          Psi.col(k) = rls[k].adapt(W.col(k), X.col(k), d[k]);
        }
        check_divergence(Psi.col(k), k, i);
      }

      // Broadcast: each node transmits one copy of its local estimate; a
      // noisy link corrupts every receiver identically. A node always uses
      // its own clean estimate.
      if (has_link_noise) {
        for (int k = 0; k < n; ++k) {
          Tx.col(k) = Psi.col(k);
          if (s.link_noise_var[k] > 0.0) {
            const double sd = std::sqrt(s.link_noise_var[k]);
            for (int j = 0; j < m; ++j) Tx(j, k) += sd * gauss(rng_link[k]);
          }
        }
      }
      const Eigen::MatrixXd& Avail = has_link_noise ? Tx : Psi;

      // Combination.
      for (int k = 0; k < n; ++k) {
        const auto& lay = layout[k];
        const int deg = static_cast<int>(lay.nbrs.size());
        Eigen::MatrixXd Pm(m, deg);
        for (int j = 0; j < deg; ++j) Pm.col(j) = Avail.col(lay.nbrs[j]);
        Pm.col(lay.self_pos) = Psi.col(k);

        if (s.policy == Policy::Fixed) {
          W.col(k) = Pm * lay.metropolis;
        } else if (s.policy == Policy::Es) {
          const Eigen::VectorXd proj = Pm.transpose() * X.col(k);
          const int chosen = es_select(sel.es_tables[k], proj, d[k]);
          W.col(k) = Pm * sel.es_tables[k].weights.row(chosen).transpose();
          if (run == 0) sel.chosen_run0[i][k] = chosen;
          if (i >= win0) {
            ++es_counts[k][chosen];
            if (i > win0 && chosen != prev_sel[k]) es_changes[k] += 1.0;
          }
          prev_sel[k] = chosen;
        } else {
          const Eigen::VectorXd proj = Pm.transpose() * X.col(k);
          const Eigen::VectorXd errs = Eigen::VectorXd::Constant(deg, d[k]) - proj;
          const SiModifiedErrors mod = si_modify_errors(errs);
          const Eigen::VectorXd w = si_adjust_weights(lay.metropolis, mod, s.si);
          W.col(k) = Pm * w;
          if (run == 0) sel.si_weights_run0[i].row(k).head(deg) = w.transpose();
          if (i >= win0) {
            sel.si_mean_abs_error.row(k).head(deg) += errs.cwiseAbs().transpose();
            sel.si_mean_weights.row(k).head(deg) += w.transpose();
          }
        }
      }

      for (int k = 0; k < n; ++k) {
        const double e_post = d[k] - W.col(k).dot(X.col(k));
        tr.network_mse[i] += e_post * e_post / n;
        tr.node_gap(k, i) += (W.col(k) - omega0).squaredNorm();
      }
      if (i >= win0 + 1) ++es_change_steps;
      if (i >= win0) ++si_steps;
    }
  }

  const double rinv = 1.0 / runs;
  tr.network_mse *= rinv;
  tr.network_mse_prior *= rinv;
  tr.node_mse_prior *= rinv;
  tr.node_gap = (tr.node_gap * rinv).cwiseSqrt();

  result.steady_state_mse = tr.network_mse.tail(iters - ss0).mean();
  result.steady_state_mse_prior = tr.network_mse_prior.tail(iters - ss0).mean();

  if (s.policy == Policy::Es) {
    for (int k = 0; k < n; ++k) {
      long best = -1;
      int best_idx = 0;
      for (size_t t = 0; t < es_counts[k].size(); ++t) {
        if (es_counts[k][t] > best) {
          best = es_counts[k][t];
          best_idx = static_cast<int>(t);
        }
      }
      sel.modal_set[k] = best_idx;
      if (es_change_steps > 0) sel.change_fraction[k] = es_changes[k] / es_change_steps;
    }
  }
  if (s.policy == Policy::Si && si_steps > 0) {
    sel.si_mean_abs_error /= static_cast<double>(si_steps);
    sel.si_mean_weights /= static_cast<double>(si_steps);
  }
  return result;
}

EffectiveWeights effective_weights(const Scenario& s, const SimResult& r,
                                   const TheoryOptions& opt) {
  (void)opt;
  const int n = s.graph.size();
  EffectiveWeights eff(n);
  for (int k = 0; k < n; ++k) {
    const auto& nk = s.graph.neighbors(k);
    if (s.policy == Policy::Es) {
      const auto& members = r.selection.es_tables[k].sets[r.selection.modal_set[k]];
      const Eigen::VectorXd w = metropolis_weights(s.graph, members, k);
      for (size_t j = 0; j < members.size(); ++j) eff[k][members[j]] = w[static_cast<Eigen::Index>(j)];
    } else if (s.policy == Policy::Si) {
      const Eigen::VectorXd base = metropolis_weights(s.graph, nk, k);
      const int deg = static_cast<int>(nk.size());
      int jmax = 0, jmin = 0;
      for (int j = 1; j < deg; ++j) {
        if (r.selection.si_mean_abs_error(k, j) > r.selection.si_mean_abs_error(k, jmax)) jmax = j;
      }
      jmin = jmax == 0 ? 1 : 0;
      for (int j = 0; j < deg; ++j) {
        if (j != jmax && r.selection.si_mean_abs_error(k, j) < r.selection.si_mean_abs_error(k, jmin))
          jmin = j;
      }
      const double h = si_asymptotic_h(s.si.rho, s.si.eps, s.noise_var[k]);
      Eigen::VectorXd w = base;
      w[jmax] -= h;
      w[jmin] += h;
      if (w[jmax] < 0.0) {
        w[jmin] += w[jmax];
        w[jmax] = 0.0;
      }
      for (int j = 0; j < deg; ++j) eff[k][nk[j]] = w[j];
    } else {
      const Eigen::VectorXd w = metropolis_weights(s.graph, nk, k);
      for (size_t j = 0; j < nk.size(); ++j) eff[k][nk[j]] = w[static_cast<Eigen::Index>(j)];
    }
  }
  return eff;
}

TheoryReport compute_theory(const Scenario& s, const SimResult& r, const TheoryOptions& opt) {
  const int n = s.graph.size();
  const double sx2 = 1.0;  // unit-variance regressors in all shipped scenarios
  std::vector<double> jmin(n);
  for (int k = 0; k < n; ++k) jmin[k] = s.noise_var[k];
  const EffectiveWeights eff = effective_weights(s, r, opt);
  const double tr_q =
      s.param.mode == ParameterProcess::Mode::Markov ? s.m * s.param.sigma_z2 : 0.0;

  Eigen::VectorXd K(n);
  if (s.adapt == AdaptKind::Lms) {
    if (opt.coupled) {
      K = k_steady_lms_coupled(eff, s.mu, jmin, sx2);
    } else {
      for (int k = 0; k < n; ++k) K[k] = k_steady_lms(eff[k], s.mu, jmin, sx2, opt.cross_e0);
    }
  } else {
    const double i_eff = rls_effective_index(s.m, s.lambda);
    for (int k = 0; k < n; ++k) K[k] = k_steady_rls(eff[k], i_eff, s.m, jmin, sx2);
  }

  TheoryReport rep;
  rep.node_mse = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k)
    rep.node_mse[k] = predict_mse(K[k], jmin[k], s.m, sx2, tr_q, opt.emse_extra_m);
  rep.network_mse = rep.node_mse.mean();
  const double modes = opt.emse_extra_m ? static_cast<double>(s.m) * s.m : static_cast<double>(s.m);
  rep.emse_term = (modes * sx2 * K).mean();
  rep.tracking_term = s.m * sx2 * tr_q;
  return rep;
}

std::vector<SweepPoint> sweep_snr(const Scenario& base, const std::vector<double>& snr_db,
                                  const TheoryOptions& opt) {
  if (snr_db.empty()) throw std::invalid_argument("sweep_snr: empty SNR list");
  std::vector<SweepPoint> points;
  points.reserve(snr_db.size());
  for (double snr : snr_db) {
    Scenario s = base;
    const double sx2 = 1.0;
    const double nv = sx2 / std::pow(10.0, snr / 10.0);
    s.noise_var = Eigen::VectorXd::Constant(s.graph.size(), nv);
    const SimResult r = run_scenario(s);
    const TheoryReport th = compute_theory(s, r, opt);
    SweepPoint p;
    p.snr_db = snr;
    p.noise_var = nv;
    p.sim_mse = r.steady_state_mse_prior;
    p.sim_mse_post = r.steady_state_mse;
    p.theory_mse = th.network_mse;
    p.gap_db = SimResult::to_db(p.sim_mse) - SimResult::to_db(p.theory_mse);
    points.push_back(p);
  }
  return points;
}

}  // namespace linksel
