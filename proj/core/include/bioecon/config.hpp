#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bioecon/coupling.hpp"

namespace bioecon {

// Experiment-level settings that sit outside a single SimConfig cell.
struct ExperimentSettings {
    int replicates = 200; // per cell; 1000 reproduces the full protocol
    int threads = 0;      // 0 = hardware concurrency
    std::vector<double> rho_grid = {0.0, 0.005, 0.01, 0.02};
    std::vector<double> r_grid = {0.025, 0.05, 0.1};
    std::vector<double> n0_grid = {0.005, 0.01, 0.02};
    std::vector<double> p_u_grid = {150.0, 300.0, 600.0};
    std::vector<double> p_h_grid = {250.0, 500.0, 1000.0};
    std::vector<double> prevalence_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                           0.6, 0.7, 0.8, 0.9, 1.0};
    std::string percentile = "linear"; // the only supported estimator

    const std::vector<double>& grid_for(const std::string& param) const;
};

struct FullConfig {
    SimConfig sim;
    ExperimentSettings experiment;
};

// Parses the sectioned key = value format. Blank lines and lines starting
// with '#' or ';' are ignored. Unknown sections or keys and out-of-range
// values are hard errors carrying the 1-based line number. Missing keys keep
// their documented defaults.
FullConfig parse_config(const std::string& text);

// Reads and parses a config file; empty path yields all defaults.
FullConfig load_config_file(const std::string& path);

// Canonical text form listing every key; parse(render_config(c)) == c.
std::string render_config(const FullConfig& config);

} // namespace bioecon
