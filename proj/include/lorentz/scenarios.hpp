#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lorentz/json_io.hpp"

namespace lorentz {

// membership in the wide-lens set built from the opened-out flat metric
// eta+ = -(2 dx0)^2 + sum dx_i^2, with R = tau^{eta+}(b-, b+)
bool lens_membership(const std::vector<double>& b_minus, const std::vector<double>& b_plus,
                     const std::vector<double>& x);

double tau_eta_plus(const std::vector<double>& u, const std::vector<double>& w);

struct ScenarioResult {
  std::string name;
  std::uint64_t seed = 0;
  bool expected_outcome = false;  // the scenario reproduced what it should
  Json report;
};

// names: lsc-failure-point-gluing | vertical-line-gluing | orientation-reversal
//        | reshetnyak-flat
ScenarioResult run_scenario(const std::string& name, std::uint64_t seed, int jobs = 1,
                            int scale = 1);

std::vector<std::string> scenario_names();

}  // namespace lorentz
