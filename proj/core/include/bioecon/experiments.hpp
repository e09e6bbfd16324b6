#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bioecon/coupling.hpp"

namespace bioecon {

// Tracked outcome variables, in the (alphabetical) order they appear in the
// summary CSV. veg_stock_t is in metric tons; everything else keeps the
// PeriodRecord units.
enum Metric : int {
    kFertPerHa = 0,
    kIncomeKfcfa,
    kInfectionRate,
    kLaborAvail,
    kLaborFood,
    kLaborVeg,
    kLeisure,
    kQvKg,
    kUtility,
    kVegStockT,
    kMetricCount,
};

constexpr std::array<std::string_view, kMetricCount> kMetricNames = {
    "fert_per_ha", "income_kfcfa", "infection_rate", "labor_avail", "labor_food",
    "labor_veg",   "leisure",      "q_v_kg",         "utility",     "veg_stock_t"};

double metric_value(const PeriodRecord& rec, Metric metric, int members);

struct Band {
    double median = 0.0;
    double p05 = 0.0;
    double p95 = 0.0;
};

// Median and 5-95 percentile band of every tracked outcome, per year, across
// the replicates of one experiment cell.
struct PanelSummary {
    std::string scenario;     // "harvest", "no-harvest", "sweep", "infection-sweep"
    double land_ha = 0.0;
    std::string param;        // swept parameter name, empty outside sweeps
    double param_value = 0.0; // meaningful only when param is non-empty
    int replicates = 0;
    std::vector<std::array<Band, kMetricCount>> per_year;

    const Band& at(int year, Metric metric) const { return per_year.at(year - 1)[metric]; }
};

// Order statistic with linear interpolation between closest ranks:
// h = (n-1)q, result = x(floor(h)) + frac(h) * (x(floor(h)+1) - x(floor(h)))
// on the sorted values. q = 0.5 is the median. Throws on an empty list.
double aggregate_percentiles(const std::vector<double>& values, double q);

// Runs `replicates` trajectories with streams (master_seed, 0..replicates-1),
// distributing them over `threads` workers (0 = hardware concurrency).
// Results are identical for any thread count; a replicate failure aborts.
std::vector<Trajectory> run_replicates(const SimConfig& config, int replicates,
                                       std::uint64_t master_seed, int threads = 0);

// Percentile aggregation of one cell's trajectories into a PanelSummary.
PanelSummary aggregate_panel(const std::vector<Trajectory>& trajectories,
                             const std::string& scenario, const std::string& param = "",
                             double param_value = 0.0);

// Monte Carlo replication of a single cell.
PanelSummary monte_carlo(const SimConfig& config, int replicates, std::uint64_t master_seed,
                         int threads = 0);

// The six baseline cells: land {0.5, 2, 5.5} ha x {harvest, no-harvest},
// paired through a shared master seed. The no-harvest counterfactual zeroes
// the marginal product of harvest labor (beta_v = 0, labor_veg pinned to 0).
std::vector<PanelSummary> scenario_suite(const SimConfig& base, std::uint64_t master_seed,
                                         int replicates, int threads = 0);

struct SweepSpec {
    std::string param; // one of rho, r, n0, p_u, p_h
    std::vector<double> values;
    SimConfig base;
    int replicates = 200;
    std::uint64_t master_seed = 12345;
};

// One PanelSummary per swept value, at 2 ha with harvest enabled.
std::vector<PanelSummary> sensitivity_sweep(const SweepSpec& spec, int threads = 0);

// Monte Carlo at each starting prevalence (2 ha, harvest enabled), one
// PanelSummary per grid value; year-1 fert_per_ha is the quantity of interest.
std::vector<PanelSummary> infection_sweep(const SimConfig& base,
                                          const std::vector<double>& prevalence_grid,
                                          std::uint64_t master_seed, int replicates,
                                          int threads = 0);

} // namespace bioecon
