#include "linksel/combine.hpp"

#include <cmath>
#include <stdexcept>

namespace linksel {

Eigen::VectorXd combine_fixed(const Eigen::VectorXd& weights, const Eigen::MatrixXd& estimates) {
  if (weights.size() != estimates.cols())
    throw std::invalid_argument("combine_fixed: weight/estimate count mismatch");
  return estimates * weights;
}

EsTables build_es_tables(const Graph& g, int k) {
  EsTables t;
  t.sets = candidate_sets(g, k);
  const auto& nk = g.neighbors(k);
  t.weights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(t.sets.size()),
                                    static_cast<Eigen::Index>(nk.size()));
  for (size_t s = 0; s < t.sets.size(); ++s) {
    const Eigen::VectorXd w = metropolis_weights(g, t.sets[s], k);
    for (size_t j = 0; j < t.sets[s].size(); ++j) {
      const auto pos = std::lower_bound(nk.begin(), nk.end(), t.sets[s][j]) - nk.begin();
      t.weights(static_cast<Eigen::Index>(s), pos) = w[static_cast<Eigen::Index>(j)];
    }
  }
  return t;
}

int es_select(const EsTables& tables, const Eigen::VectorXd& proj, double d) {
  if (tables.sets.empty()) throw std::invalid_argument("es_select: empty candidate list");
  const Eigen::VectorXd errs =
      (Eigen::VectorXd::Constant(tables.weights.rows(), d) - tables.weights * proj).cwiseAbs();
  int best = 0;
  for (Eigen::Index s = 1; s < errs.size(); ++s)
    if (errs[s] < errs[best]) best = static_cast<int>(s);
  return best;
}

SiModifiedErrors si_modify_errors(const Eigen::VectorXd& errors) {
  if (errors.size() < 2) throw std::invalid_argument("si_modify_errors: need at least 2 entries");
  SiModifiedErrors out;
  const Eigen::VectorXd a = errors.cwiseAbs();
  out.jmax = 0;
  for (Eigen::Index j = 1; j < a.size(); ++j)
    if (a[j] > a[out.jmax]) out.jmax = static_cast<int>(j);
  out.jmin = out.jmax == 0 ? 1 : 0;
  for (Eigen::Index j = 0; j < a.size(); ++j)
    if (j != out.jmax && a[j] < a[out.jmin]) out.jmin = static_cast<int>(j);
  out.xi_min = a[out.jmin];
  out.modified = Eigen::VectorXd::Zero(errors.size());
  out.modified[out.jmax] = a[out.jmax];
  out.modified[out.jmin] = -a[out.jmin];
  return out;
}

Eigen::VectorXd si_adjust_weights(const Eigen::VectorXd& base, const SiModifiedErrors& mod,
                                  const SiParams& params) {
  if (params.rho < 0.0 || params.eps <= 0.0)
    throw std::invalid_argument("si_adjust_weights: need rho >= 0 and eps > 0");
  Eigen::VectorXd w = base;
  const double h = params.rho * params.eps / (1.0 + params.eps * mod.xi_min);
  w[mod.jmax] -= h;
  w[mod.jmin] += h;
  if (w[mod.jmax] < 0.0) {
    // The penalized node is discarded; its remaining mass moves to the
    // rewarded node so the weights still sum to one.
    w[mod.jmin] += w[mod.jmax];
    w[mod.jmax] = 0.0;
  }
  return w;
}

}  // namespace linksel
