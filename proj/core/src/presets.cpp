#include "linksel/presets.hpp"

#include <cstdlib>
#include <stdexcept>

namespace linksel {

std::vector<std::string> preset_names() {
  return {"wsn-static", "wsn-timevarying", "wsn-snr-sweep", "grid-ieee14"};
}

std::string default_data_dir() {
  if (const char* env = std::getenv("LINKSEL_DATA_DIR")) return env;
  return "data";
}

namespace {

// Nodes whose broadcast links are noisy in the WSN fixture. They sit on
// opposite sides of the ring with disjoint neighborhoods, so every other
// node receives from exactly one of them.
constexpr int kWsnNoisyNodes[] = {4, 14};
constexpr int kGridNoisyBuses[] = {3, 12};  // buses 4 and 13 (0-based)

Preset wsn_base(const std::string& data_dir) {
  Graph g = Graph::load_edge_list(data_dir + "/wsn20.edges");
  Preset p{.name = "", .description = "", .base = Scenario(std::move(g))};
  Scenario& s = p.base;
  s.m = 10;
  s.iters = 1000;
  s.runs = 100;
  s.mu = 0.045;
  s.lambda = 0.97;
  s.delta = 0.81;
  s.si = {4e-3, 10.0};
  s.noise_var = Eigen::VectorXd::Constant(s.graph.size(), 1e-3);
  s.alpha_min = 0.0;
  s.alpha_max = 0.5;
  s.seed = 2024;
  return p;
}

}  // namespace

Preset make_preset(const std::string& name, const std::string& data_dir) {
  if (name == "wsn-static") {
    Preset p = wsn_base(data_dir);
    p.name = name;
    p.description =
        "20-node WSN, static parameter; two nodes broadcast over noisy links "
        "(variance 0.1)";
    p.base.link_noise_var = Eigen::VectorXd::Zero(p.base.graph.size());
    for (int k : kWsnNoisyNodes) p.base.link_noise_var[k] = 0.1;
    return p;
  }
  if (name == "wsn-timevarying") {
    Preset p = wsn_base(data_dir);
    p.name = name;
    p.description =
        "20-node WSN, first-order Markov parameter (beta=0.98, sigma_z2=0.01); "
        "two nodes broadcast over noisy links (variance 16)";
    p.tracking = true;
    p.base.si.rho = 6e-3;
    p.base.param.mode = ParameterProcess::Mode::Markov;
    p.base.param.beta = 0.98;
    p.base.param.sigma_z2 = 0.01;
    p.base.link_noise_var = Eigen::VectorXd::Zero(p.base.graph.size());
    for (int k : kWsnNoisyNodes) p.base.link_noise_var[k] = 16.0;
    return p;
  }
  if (name == "wsn-snr-sweep") {
    Graph g = Graph::load_edge_list(data_dir + "/sweep20.edges");
    Preset p{.name = name,
             .description =
                 "20-node ring-with-chords, white regressors, homogeneous noise; "
                 "steady-state MSE vs closed-form prediction at several SNRs",
             .base = Scenario(std::move(g))};
    Scenario& s = p.base;
    s.m = 10;
    s.iters = 4000;
    s.runs = 200;
    s.mu = 0.006;
    s.lambda = 0.995;
    s.delta = 1.0;
    s.si = {4e-3, 10.0};
    s.noise_var = Eigen::VectorXd::Constant(s.graph.size(), 1e-3);
    s.alpha_min = 0.0;
    s.alpha_max = 0.0;  // white regressors: the analysis assumes R = I
    s.seed = 2024;
    p.sweep_snrs_db = {0.0, 10.0, 20.0, 30.0};
    return p;
  }
  if (name == "grid-ieee14") {
    GridModel grid = GridModel::load(data_dir + "/ieee14.branches");
    Graph g = grid.graph();
    Preset p{.name = name,
             .description =
                 "IEEE 14-bus DC state estimation, all-ones phase-angle state; "
                 "buses 4 and 13 broadcast over noisy links (variance 0.3)",
             .base = Scenario(std::move(g))};
    Scenario& s = p.base;
    s.m = grid.buses;
    s.iters = 300;
    s.runs = 100;
    s.mu = 0.018;
    s.lambda = 0.945;
    s.delta = 0.001;
    s.si = {0.07, 10.0};
    s.noise_var = Eigen::VectorXd::Constant(s.graph.size(), 1e-3);
    s.fixed_regressors = grid.jacobians(/*normalize=*/true);
    s.omega0_init = Eigen::VectorXd::Ones(grid.buses);
    s.link_noise_var = Eigen::VectorXd::Zero(s.graph.size());
    for (int k : kGridNoisyBuses) s.link_noise_var[k] = 0.3;
    s.seed = 2024;
    return p;
  }
  throw std::invalid_argument("unknown preset: " + name);
}

void enable_sweep_tracking(Scenario& s) {
  s.param.mode = ParameterProcess::Mode::Markov;
  s.param.beta = 0.98;
  s.param.sigma_z2 = 1e-8;
}

}  // namespace linksel
