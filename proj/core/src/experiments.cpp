#include "bioecon/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "bioecon/errors.hpp"

namespace bioecon {

double metric_value(const PeriodRecord& rec, Metric metric, int members) {
    switch (metric) {
        case kFertPerHa: return rec.fert_per_ha;
        case kIncomeKfcfa: return rec.income_kfcfa;
        case kInfectionRate:
            return static_cast<double>(rec.infected) / static_cast<double>(members);
        case kLaborAvail: return rec.labor_avail;
        case kLaborFood: return rec.labor_food;
        case kLaborVeg: return rec.labor_veg;
        case kLeisure: return rec.leisure;
        case kQvKg: return rec.q_v_kg;
        case kUtility: return rec.utility;
        case kVegStockT: return rec.veg_stock_kg / 1000.0;
        default: throw InvalidStateError("unknown metric");
    }
}

double aggregate_percentiles(const std::vector<double>& values, double q) {
    if (values.empty()) throw InvalidStateError("aggregate_percentiles: empty list");
    if (!(q >= 0.0 && q <= 1.0)) {
        throw InvalidStateError("aggregate_percentiles: q must be in [0,1]");
    }
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<Trajectory> run_replicates(const SimConfig& config, int replicates,
                                       std::uint64_t master_seed, int threads) {
    if (replicates < 1) throw InvalidStateError("run_replicates: replicates must be >= 1");
    SimConfig cfg = config;
    cfg.seed = master_seed;
    cfg.validate();

    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min(threads, replicates);

    std::vector<Trajectory> out(replicates);
    if (threads == 1) {
        for (int r = 0; r < replicates; ++r) out[r] = run_trajectory(cfg, r);
        return out;
    }

    std::atomic<int> next{0};
    std::mutex error_mutex;
    int failed_replicate = -1;
    std::exception_ptr error;

    auto worker = [&]() {
        for (;;) {
            const int r = next.fetch_add(1);
            if (r >= replicates) return;
            try {
                out[r] = run_trajectory(cfg, r);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (failed_replicate < 0 || r < failed_replicate) {
                    failed_replicate = r;
                    error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return out;
}

PanelSummary aggregate_panel(const std::vector<Trajectory>& trajectories,
                             const std::string& scenario, const std::string& param,
                             double param_value) {
    if (trajectories.empty()) throw InvalidStateError("aggregate_panel: no trajectories");
    const SimConfig& cfg = trajectories.front().config;
    const int years = cfg.years;

    PanelSummary summary;
    summary.scenario = scenario;
    summary.land_ha = cfg.land_ha;
    summary.param = param;
    summary.param_value = param_value;
    summary.replicates = static_cast<int>(trajectories.size());
    summary.per_year.resize(years);

    std::vector<double> values(trajectories.size());
    for (int year = 1; year <= years; ++year) {
        for (int m = 0; m < kMetricCount; ++m) {
            for (std::size_t r = 0; r < trajectories.size(); ++r) {
                values[r] = metric_value(trajectories[r].records.at(year - 1),
                                         static_cast<Metric>(m), cfg.members);
            }
            Band& band = summary.per_year[year - 1][m];
            band.median = aggregate_percentiles(values, 0.5);
            band.p05 = aggregate_percentiles(values, 0.05);
            band.p95 = aggregate_percentiles(values, 0.95);
        }
    }
    return summary;
}

PanelSummary monte_carlo(const SimConfig& config, int replicates, std::uint64_t master_seed,
                         int threads) {
    const auto trajectories = run_replicates(config, replicates, master_seed, threads);
    return aggregate_panel(trajectories, config.allow_harvest ? "harvest" : "no-harvest");
}

std::vector<PanelSummary> scenario_suite(const SimConfig& base, std::uint64_t master_seed,
                                         int replicates, int threads) {
    std::vector<PanelSummary> out;
    for (double land : {0.5, 2.0, 5.5}) {
        for (bool harvest : {true, false}) {
            SimConfig cfg = base;
            cfg.land_ha = land;
            cfg.allow_harvest = harvest;
            if (!harvest) cfg.hh.beta_v = 0.0;
            out.push_back(monte_carlo(cfg, replicates, master_seed, threads));
        }
    }
    return out;
}

namespace {

SimConfig apply_sweep_param(const SimConfig& base, const std::string& param, double value) {
    SimConfig cfg = base;
    if (param == "rho") {
        cfg.eco.rho = value;
    } else if (param == "r") {
        cfg.eco.r = value;
    } else if (param == "n0") {
        cfg.eco.n0 = value;
    } else if (param == "p_u") {
        cfg.prices.p_u = value;
    } else if (param == "p_h") {
        cfg.prices.p_g = value;
    } else {
        throw InvalidStateError("unknown sweep parameter '" + param +
                                "' (expected rho, r, n0, p_u or p_h)");
    }
    return cfg;
}

} // namespace

std::vector<PanelSummary> sensitivity_sweep(const SweepSpec& spec, int threads) {
    if (spec.values.empty()) throw InvalidStateError("sensitivity_sweep: no values");
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        for (std::size_t j = i + 1; j < spec.values.size(); ++j) {
            if (spec.values[i] == spec.values[j]) {
                throw InvalidStateError("sensitivity_sweep: duplicate value in grid");
            }
        }
    }
    std::vector<PanelSummary> out;
    for (double value : spec.values) {
        SimConfig cfg = apply_sweep_param(spec.base, spec.param, value);
        cfg.land_ha = 2.0;
        cfg.allow_harvest = true;
        const auto trajectories =
            run_replicates(cfg, spec.replicates, spec.master_seed, threads);
        out.push_back(aggregate_panel(trajectories, "sweep", spec.param, value));
    }
    return out;
}

std::vector<PanelSummary> infection_sweep(const SimConfig& base,
                                          const std::vector<double>& prevalence_grid,
                                          std::uint64_t master_seed, int replicates,
                                          int threads) {
    if (prevalence_grid.empty()) throw InvalidStateError("infection_sweep: empty grid");
    std::vector<PanelSummary> out;
    for (double p : prevalence_grid) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InvalidStateError("infection_sweep: prevalence must be in [0,1]");
        }
        SimConfig cfg = base;
        cfg.initial_prevalence = p;
        cfg.land_ha = 2.0;
        cfg.allow_harvest = true;
        const auto trajectories = run_replicates(cfg, replicates, master_seed, threads);
        out.push_back(aggregate_panel(trajectories, "infection-sweep", "initial_prevalence", p));
    }
    return out;
}

} // namespace bioecon
