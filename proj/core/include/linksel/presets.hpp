#pragma once

#include <string>
#include <vector>

#include "linksel/sim.hpp"

namespace linksel {

// A named, fully parameterized experiment. `base` carries everything but
// the algorithm choice (policy/adaptation), which callers set per curve.
struct Preset {
  std::string name;
  std::string description;
  Scenario base;
  std::vector<double> sweep_snrs_db;  // nonempty for sweep presets
  bool tracking = false;              // Markov parameter process enabled
};

std::vector<std::string> preset_names();

// Builds one of: wsn-static, wsn-timevarying, wsn-snr-sweep, grid-ieee14.
// `data_dir` must contain the topology fixture files (wsn20.edges,
// sweep20.edges, ieee14.branches). Throws std::invalid_argument for
// unknown names or missing fixtures.
Preset make_preset(const std::string& name, const std::string& data_dir);

// Default fixture directory: $LINKSEL_DATA_DIR if set, else "data".
std::string default_data_dir();

// Switches a sweep scenario to the tracking (Markov) parameter model used
// by the theory-vs-simulation tracking comparison: beta = 0.98 with a small
// perturbation variance so the closed-form additive term (which ignores
// the adaptation lag) stays dominant over the unmodeled lag error.
void enable_sweep_tracking(Scenario& s);

}  // namespace linksel
