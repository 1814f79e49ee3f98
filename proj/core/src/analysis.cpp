#include "linksel/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace linksel {

double mmse(double sigma_d2, const Eigen::VectorXd& p, const Eigen::MatrixXd& R) {
  Eigen::LLT<Eigen::MatrixXd> llt(R);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("mmse: R must be symmetric positive definite");
  const double reduction = p.dot(llt.solve(p));
  return sigma_d2 - reduction;
}

double k_steady_lms(const std::map<int, double>& aw, double mu, const std::vector<double>& jmin,
                    double sx2, bool cross_e0) {
  double num = 0.0;
  for (const auto& [l, w] : aw) num += w * w * mu * mu * jmin.at(l) * sx2;
  if (cross_e0) {
    for (auto a = aw.begin(); a != aw.end(); ++a) {
      for (auto b = std::next(a); b != aw.end(); ++b) {
        num += 2.0 * a->second * b->second * mu * mu *
               std::sqrt(jmin.at(a->first) * jmin.at(b->first)) * sx2;
      }
    }
  }
  const double g = 1.0 - mu * sx2;
  double wsum = 0.0;
  for (const auto& [l, w] : aw) wsum += w;
  const double den = 1.0 - wsum * wsum * g * g;
  if (den <= 0.0) throw std::domain_error("k_steady_lms: nonpositive denominator (unstable)");
  return num / den;
}

Eigen::VectorXd k_steady_lms_coupled(const EffectiveWeights& eff, double mu,
                                     const std::vector<double>& jmin, double sx2) {
  const int n = static_cast<int>(eff.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  const double g2 = (1.0 - mu * sx2) * (1.0 - mu * sx2);
  for (int k = 0; k < n; ++k) {
    for (const auto& [l, wl] : eff[k]) {
      A(k, l) -= wl * wl * g2;
      b[k] += wl * wl * mu * mu * jmin.at(l) * sx2;
      // Cross terms K_{l,q} approximated by (K_l + K_q)/2.
      for (const auto& [q, wq] : eff[k]) {
        if (q <= l) continue;
        A(k, l) -= wl * wq * g2;
        A(k, q) -= wl * wq * g2;
      }
    }
  }
  return A.partialPivLu().solve(b);
}

double k_steady_rls(const std::map<int, double>& aw, double i, int m,
                    const std::vector<double>& jmin, double sx2) {
  if (i <= m + 1) throw std::invalid_argument("k_steady_rls: requires i > M + 1");
  const double f = 1.0 / (i - m);
  double num = 0.0;
  double wsum = 0.0;
  for (const auto& [l, w] : aw) {
    num += w * w * jmin.at(l) * f * f / sx2;
    wsum += w;
  }
  const double den = 1.0 - wsum * wsum * (1.0 - f) * (1.0 - f);
  if (den <= 0.0) throw std::domain_error("k_steady_rls: nonpositive denominator");
  return num / den;
}

double predict_mse(double k_value, double jmin, int m, double sx2, double tr_q,
                   bool emse_extra_m) {
  const double modes = emse_extra_m ? static_cast<double>(m) * m : static_cast<double>(m);
  return jmin + modes * k_value * sx2 + m * sx2 * tr_q;
}

double si_asymptotic_h(double rho, double eps, double jmin, bool use_jmin_literal) {
  const double e0 = use_jmin_literal ? jmin : std::sqrt(jmin);
  return rho * eps / (1.0 + eps * e0);
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("binomial: require 0 <= k <= n");
  long long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

ComplexityCount complexity_counts(AlgorithmId alg, int m, int T, int t, int nk) {
  const long long M = m;
  ComplexityCount c;
  switch (alg) {
    case AlgorithmId::LmsAdapt:
      c = {8 * M + 2, 8 * M, 0};
      break;
    case AlgorithmId::RlsAdapt:
      c = {4 * M * M + 16 * M + 1, 4 * M * M + 12 * M - 1, 1};
      break;
    case AlgorithmId::DiffLms:
      c = {8 * M + 2, 8 * M, 0};
      break;
    case AlgorithmId::DiffRls:
      c = {4 * M * M + 16 * M + 1, 4 * M * M + 12 * M - 1, 1};
      break;
    case AlgorithmId::EsLms: {
      if (t > T) throw std::invalid_argument("complexity_counts: t must not exceed T");
      const long long comb = binomial(T, t);
      c = {((t + 1) * comb + 8) * M + 2, (t * comb + 8) * M, 0};
      break;
    }
    case AlgorithmId::EsRls: {
      if (t > T) throw std::invalid_argument("complexity_counts: t must not exceed T");
      const long long comb = binomial(T, t);
      c = {4 * M * M + ((t + 1) * comb + 16) * M + 1, 4 * M * M + (t * comb + 12) * M - 1, 1};
      break;
    }
    case AlgorithmId::SiLms:
      c = {(8 + 2 * static_cast<long long>(nk)) * M + 3 * nk + 2,
           (8 + static_cast<long long>(nk)) * M + 2 * nk, nk};
      break;
    case AlgorithmId::SiRls:
      c = {4 * M * M + (16 + 2 * static_cast<long long>(nk)) * M + 3 * nk + 1,
           4 * M * M + (12 + static_cast<long long>(nk)) * M + 2 * nk - 1,
           static_cast<long long>(nk) + 1};
      break;
  }
  return c;
}

}  // namespace linksel
