#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bioecon/coupling.hpp"
#include "bioecon/eco_dynamics.hpp"
#include "bioecon/experiments.hpp"

namespace bioecon {

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double value);

// Writes the summary schema
//   scenario,land_ha,param,param_value,year,outcome,median,p05,p95,replicates
// with rows sorted by (scenario, land_ha, param_value, year, outcome).
// Identical inputs yield identical bytes. Returns the byte count written.
std::size_t write_summary_csv(const std::vector<PanelSummary>& summaries, std::ostream& sink);

// Per-replicate records: replicate,year + the PeriodRecord fields.
std::size_t write_replicates_csv(const std::vector<Trajectory>& trajectories,
                                 std::ostream& sink);

// Sampled steady-state trajectories: day + the seven population columns.
std::size_t write_steady_state_csv(const SteadyStateReport& report, std::ostream& sink);

// One parsed row of the summary schema, as consumed by the figure renderer.
struct SummaryRow {
    std::string scenario;
    double land_ha = 0.0;
    std::string param;
    double param_value = 0.0;
    int year = 0;
    std::string outcome;
    double median = 0.0;
    double p05 = 0.0;
    double p95 = 0.0;
    int replicates = 0;
};

std::vector<SummaryRow> read_summary_csv(const std::string& path);

} // namespace bioecon
