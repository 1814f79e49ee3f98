#include <doctest.h>

#include "linksel/analysis.hpp"

using namespace linksel;

TEST_CASE("mmse hand oracle") {
  Eigen::VectorXd p(2);
  p << 1.0, 0.0;
  CHECK(mmse(2.0, p, Eigen::MatrixXd::Identity(2, 2)) == doctest::Approx(1.0).epsilon(1e-15));
  Eigen::MatrixXd R(2, 2);
  R << 2.0, 0.0, 0.0, 1.0;
  CHECK(mmse(2.0, p, R) == doctest::Approx(1.5).epsilon(1e-15));
  Eigen::MatrixXd bad = -Eigen::MatrixXd::Identity(2, 2);
  CHECK_THROWS_AS(mmse(1.0, p, bad), std::invalid_argument);
}

TEST_CASE("LMS K fixed point: isolated node matches the textbook closed form") {
  // Single node with weight 1: K = mu^2 J / (1 - (1 - mu)^2) = mu J / (2 - mu).
  const double mu = 0.05, J = 1e-3;
  const std::map<int, double> aw{{0, 1.0}};
  const std::vector<double> jmin{J};
  const double K = k_steady_lms(aw, mu, jmin, 1.0, false);
  CHECK(K == doctest::Approx(mu * J / (2.0 - mu)).epsilon(1e-12));
}

TEST_CASE("LMS K vanishes as mu -> 0 and throws at the stability boundary") {
  const std::map<int, double> aw{{0, 1.0}};
  const std::vector<double> jmin{1e-3};
  CHECK(k_steady_lms(aw, 1e-8, jmin, 1.0, false) < 1e-10);
  // mu = 2 makes (1 - mu)^2 = 1: denominator exactly zero.
  CHECK_THROWS_AS(k_steady_lms(aw, 2.0, jmin, 1.0, false), std::domain_error);
}

TEST_CASE("LMS K: cross terms increase the numerator only") {
  const std::map<int, double> aw{{0, 0.5}, {1, 0.5}};
  const std::vector<double> jmin{1e-3, 4e-3};
  const double plain = k_steady_lms(aw, 0.05, jmin, 1.0, false);
  const double cross = k_steady_lms(aw, 0.05, jmin, 1.0, true);
  CHECK(cross > plain);
}

TEST_CASE("coupled LMS K reduces to the decoupled value for an isolated node") {
  EffectiveWeights eff(1);
  eff[0][0] = 1.0;
  const std::vector<double> jmin{1e-3};
  const Eigen::VectorXd K = k_steady_lms_coupled(eff, 0.05, jmin, 1.0);
  CHECK(K[0] == doctest::Approx(k_steady_lms(eff[0], 0.05, jmin, 1.0, false)).epsilon(1e-12));
}

TEST_CASE("RLS K: decays to zero and decreases monotonically past M + 2") {
  const std::map<int, double> aw{{0, 1.0}};
  const std::vector<double> jmin{1e-3};
  const int m = 10;
  double prev = k_steady_rls(aw, m + 2.5, m, jmin, 1.0);
  for (double i = m + 3.0; i < m + 50.0; i += 1.0) {
    const double K = k_steady_rls(aw, i, m, jmin, 1.0);
    CHECK(K < prev);
    prev = K;
  }
  // Asymptotically K ~ J_min / (2 (i - M)): vanishes as i grows.
  CHECK(k_steady_rls(aw, 1e9, m, jmin, 1.0) ==
        doctest::Approx(1e-3 / 2e9).epsilon(1e-6));
  CHECK_THROWS_AS(k_steady_rls(aw, m + 1.0, m, jmin, 1.0), std::invalid_argument);
}

TEST_CASE("rls_effective_index") {
  CHECK(rls_effective_index(10, 0.995) == doctest::Approx(210.0).epsilon(1e-12));
}

TEST_CASE("predict_mse composes J_min, EMSE, and the tracking term") {
  CHECK(predict_mse(0.0, 1e-3, 10, 1.0, 0.0) == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(predict_mse(2e-5, 1e-3, 10, 1.0, 0.0) == doctest::Approx(1e-3 + 10 * 2e-5));
  CHECK(predict_mse(2e-5, 1e-3, 10, 1.0, 0.0, true) == doctest::Approx(1e-3 + 100 * 2e-5));
  CHECK(predict_mse(0.0, 1e-3, 10, 1.0, 1e-4) == doctest::Approx(1e-3 + 10 * 1e-4));
}

TEST_CASE("si_asymptotic_h") {
  // |e0| = sqrt(J_min) by default.
  CHECK(si_asymptotic_h(4e-3, 10.0, 0.04) ==
        doctest::Approx(4e-3 * 10.0 / (1.0 + 10.0 * 0.2)).epsilon(1e-12));
  CHECK(si_asymptotic_h(4e-3, 10.0, 0.04, true) ==
        doctest::Approx(4e-3 * 10.0 / (1.0 + 10.0 * 0.04)).epsilon(1e-12));
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(5, 3) == 10);
  CHECK(binomial(11, 0) == 1);
  CHECK(binomial(11, 11) == 1);
  CHECK(binomial(20, 10) == 184756);
  CHECK_THROWS_AS(binomial(3, 4), std::invalid_argument);
}

TEST_CASE("complexity counts: published table values at M=10, T=5, t=3, |N|=5") {
  const auto es_lms = complexity_counts(AlgorithmId::EsLms, 10, 5, 3);
  CHECK(es_lms.multiplications == 482);
  CHECK(es_lms.additions == 380);
  CHECK(es_lms.divisions == 0);

  const auto es_rls = complexity_counts(AlgorithmId::EsRls, 10, 5, 3);
  CHECK(es_rls.multiplications == 961);
  CHECK(es_rls.additions == 819);
  CHECK(es_rls.divisions == 1);

  const auto si_lms = complexity_counts(AlgorithmId::SiLms, 10, 0, 0, 5);
  CHECK(si_lms.multiplications == 197);
  CHECK(si_lms.additions == 140);
  CHECK(si_lms.divisions == 5);

  const auto si_rls = complexity_counts(AlgorithmId::SiRls, 10, 0, 0, 5);
  CHECK(si_rls.multiplications == 676);
  CHECK(si_rls.additions == 579);
  CHECK(si_rls.divisions == 6);

  const auto diff_lms = complexity_counts(AlgorithmId::DiffLms, 10);
  CHECK(diff_lms.multiplications == 82);
  CHECK(diff_lms.additions == 80);

  const auto diff_rls = complexity_counts(AlgorithmId::DiffRls, 10);
  CHECK(diff_rls.multiplications == 561);
  CHECK(diff_rls.additions == 519);
  CHECK(diff_rls.divisions == 1);
}

TEST_CASE("complexity counts: ES terms scale with the binomial oracle") {
  for (int T = 3; T <= 8; ++T) {
    for (int t = 1; t <= T; ++t) {
      const long long comb = binomial(T, t);
      const auto c = complexity_counts(AlgorithmId::EsLms, 7, T, t);
      const auto base = complexity_counts(AlgorithmId::LmsAdapt, 7);
      CHECK(c.multiplications - base.multiplications == (t + 1) * comb * 7);
      CHECK(c.additions - base.additions == t * comb * 7);
    }
  }
  CHECK_THROWS_AS(complexity_counts(AlgorithmId::EsLms, 7, 3, 4), std::invalid_argument);
}
