#include <benchmark/benchmark.h>

#include <random>

#include "linksel/adapt.hpp"
#include "linksel/combine.hpp"
#include "linksel/rng.hpp"
#include "linksel/sim.hpp"

using namespace linksel;

namespace {

Eigen::VectorXd random_vec(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(m);
  for (int j = 0; j < m; ++j) v[j] = gauss(rng);
  return v;
}

void BM_LmsAdapt(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  auto rng = make_rng(1, 0, 0, Stream::Regressor);
  const LmsAdapter lms(0.045);
  const Eigen::VectorXd w = random_vec(m, rng);
  const Eigen::VectorXd x = random_vec(m, rng);
  for (auto _ : state) benchmark::DoNotOptimize(lms.adapt(w, x, 1.0));
}
BENCHMARK(BM_LmsAdapt)->Arg(10)->Arg(14)->Arg(64);

void BM_RlsAdapt(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  auto rng = make_rng(2, 0, 0, Stream::Regressor);
  RlsAdapter rls(m, 0.97, 1.0);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  const Eigen::VectorXd x = random_vec(m, rng);
  for (auto _ : state) benchmark::DoNotOptimize(w = rls.adapt(w, x, 1.0));
}
BENCHMARK(BM_RlsAdapt)->Arg(10)->Arg(14)->Arg(64);

Graph dense_ring(int n, int hops) {
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < n; ++k)
    for (int h = 1; h <= hops; ++h) edges.emplace_back(k, (k + h) % n);
  return Graph(n, edges);
}

void BM_EsSelect(benchmark::State& state) {
  // Candidate count grows as 2^(|N_k| - 1) - 1 with the neighborhood size.
  const int hops = static_cast<int>(state.range(0));
  const Graph g = dense_ring(20, hops);
  const EsTables t = build_es_tables(g, 0);
  auto rng = make_rng(3, 0, 0, Stream::Regressor);
  const Eigen::VectorXd proj = random_vec(g.neighborhood_size(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(es_select(t, proj, 0.3));
  state.counters["candidate_sets"] = static_cast<double>(t.sets.size());
}
BENCHMARK(BM_EsSelect)->Arg(2)->Arg(3)->Arg(5);

void BM_SiCombineStep(benchmark::State& state) {
  const Graph g = dense_ring(20, 5);
  const Eigen::VectorXd base = metropolis_weights(g, g.neighbors(0), 0);
  auto rng = make_rng(4, 0, 0, Stream::Regressor);
  const Eigen::VectorXd errs = random_vec(g.neighborhood_size(0), rng);
  const SiParams p{4e-3, 10.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(si_adjust_weights(base, si_modify_errors(errs), p));
}
BENCHMARK(BM_SiCombineStep);

void BM_RunScenario(benchmark::State& state) {
  Scenario s{dense_ring(20, 2)};
  s.m = 10;
  s.iters = 200;
  s.runs = 1;
  std::tie(s.policy, s.adapt) =
      parse_algorithm(state.range(0) == 0 ? "diff-lms" : (state.range(0) == 1 ? "es-rls" : "si-rls"));
  s.noise_var = Eigen::VectorXd::Constant(20, 1e-3);
  s.seed = 9;
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s));
  state.SetItemsProcessed(state.iterations() * s.iters * 20);
}
BENCHMARK(BM_RunScenario)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
