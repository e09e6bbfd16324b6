// Command-line front end: scenario runs, sensitivity sweeps, the infection
// sweep, the ecological steady-state check, and SVG plotting.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bioecon/config.hpp"
#include "bioecon/csv.hpp"
#include "bioecon/errors.hpp"
#include "bioecon/experiments.hpp"
#include "bioecon/svg.hpp"

namespace fs = std::filesystem;
using namespace bioecon;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    int reps = -1;          // -1: take from config
    long long seed = -1;    // -1: take from config
    int threads = -1;       // -1: take from config
    bool per_replicate = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_reps = true) {
    cmd->add_option("--config", args.config_path, "Config file (sectioned key = value)");
    cmd->add_option("--out", args.out_dir, "Output directory")->capture_default_str();
    if (with_reps) {
        cmd->add_option("--reps", args.reps, "Replicates per cell (config default otherwise)");
        cmd->add_flag("--per-replicate", args.per_replicate,
                      "Also write per-replicate CSV files");
    }
    cmd->add_option("--seed", args.seed, "Master seed (config default otherwise)");
    cmd->add_option("--threads", args.threads,
                    "Worker thread cap; results do not depend on it");
}

struct Resolved {
    FullConfig config;
    int reps;
    std::uint64_t seed;
    int threads;
};

Resolved resolve(const CommonArgs& args) {
    Resolved r;
    r.config = load_config_file(args.config_path);
    r.reps = args.reps > 0 ? args.reps : r.config.experiment.replicates;
    r.seed = args.seed >= 0 ? static_cast<std::uint64_t>(args.seed) : r.config.sim.seed;
    r.threads = args.threads >= 0 ? args.threads : r.config.experiment.threads;
    r.config.sim.seed = r.seed;
    return r;
}

void write_file(const fs::path& path, const std::string& what,
                const std::function<std::size_t(std::ostream&)>& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path.string());
    const std::size_t bytes = writer(out);
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
    std::cout << what << ": " << path.string() << " (" << bytes << " bytes)\n";
}

std::string cell_tag(const SimConfig& cfg) {
    std::string land = format_double(cfg.land_ha);
    for (char& c : land) {
        if (c == '.') c = 'p';
    }
    return std::string(cfg.allow_harvest ? "harvest" : "no-harvest") + "_" + land + "ha";
}

int cmd_run(const CommonArgs& args, double land_filter, bool no_harvest_only) {
    Resolved r = resolve(args);
    fs::create_directories(args.out_dir);

    std::vector<std::pair<double, bool>> cells;
    for (double land : {0.5, 2.0, 5.5}) {
        if (land_filter > 0.0 && land != land_filter) continue;
        for (bool harvest : {true, false}) {
            if (no_harvest_only && harvest) continue;
            cells.emplace_back(land, harvest);
        }
    }
    if (cells.empty() && land_filter > 0.0) {
        // a custom land endowment outside the standard three
        cells.emplace_back(land_filter, !no_harvest_only);
        if (!no_harvest_only) cells.emplace_back(land_filter, false);
    }

    std::vector<PanelSummary> summaries;
    for (const auto& [land, harvest] : cells) {
        SimConfig cfg = r.config.sim;
        cfg.land_ha = land;
        cfg.allow_harvest = harvest;
        if (!harvest) cfg.hh.beta_v = 0.0;
        const auto trajectories = run_replicates(cfg, r.reps, r.seed, r.threads);
        summaries.push_back(aggregate_panel(trajectories, harvest ? "harvest" : "no-harvest"));
        if (args.per_replicate) {
            write_file(fs::path(args.out_dir) / ("replicates_" + cell_tag(cfg) + ".csv"),
                       "per-replicate records", [&](std::ostream& s) {
                           return write_replicates_csv(trajectories, s);
                       });
        }
    }

    write_file(fs::path(args.out_dir) / "summary.csv", "summary",
               [&](std::ostream& s) { return write_summary_csv(summaries, s); });
    return 0;
}

int cmd_sweep(const CommonArgs& args, const std::string& param, const std::string& values_csv) {
    Resolved r = resolve(args);
    fs::create_directories(args.out_dir);

    SweepSpec spec;
    spec.param = param;
    spec.base = r.config.sim;
    spec.replicates = r.reps;
    spec.master_seed = r.seed;
    if (values_csv.empty()) {
        spec.values = r.config.experiment.grid_for(param);
    } else {
        std::stringstream ss(values_csv);
        std::string item;
        while (std::getline(ss, item, ',')) spec.values.push_back(std::stod(item));
    }

    const auto summaries = sensitivity_sweep(spec, r.threads);
    write_file(fs::path(args.out_dir) / "summary.csv", "sweep summary",
               [&](std::ostream& s) { return write_summary_csv(summaries, s); });
    return 0;
}

int cmd_infection_sweep(const CommonArgs& args, const std::string& grid_csv) {
    Resolved r = resolve(args);
    fs::create_directories(args.out_dir);

    std::vector<double> grid;
    if (grid_csv.empty()) {
        grid = r.config.experiment.prevalence_grid;
    } else {
        std::stringstream ss(grid_csv);
        std::string item;
        while (std::getline(ss, item, ',')) grid.push_back(std::stod(item));
    }

    const auto summaries = infection_sweep(r.config.sim, grid, r.seed, r.reps, r.threads);
    write_file(fs::path(args.out_dir) / "summary.csv", "infection-sweep summary",
               [&](std::ostream& s) { return write_summary_csv(summaries, s); });

    std::cout << "prevalence  fert_per_ha(median)  p05  p95  [year 1]\n";
    for (const auto& cell : summaries) {
        const Band& b = cell.at(1, kFertPerHa);
        std::cout << format_double(cell.param_value) << "  " << format_double(b.median) << "  "
                  << format_double(b.p05) << "  " << format_double(b.p95) << "\n";
    }
    return 0;
}

int cmd_steady_state(const CommonArgs& args, int years) {
    Resolved r = resolve(args);
    fs::create_directories(args.out_dir);

    EcoState state0 = r.config.sim.eco_init;
    state0.s_humans = r.config.sim.members * (1.0 - r.config.sim.initial_prevalence);
    state0.i_humans = r.config.sim.members * r.config.sim.initial_prevalence;

    const auto report = steady_state_run(r.config.sim.eco, state0, years, r.config.sim.dt);
    write_file(fs::path(args.out_dir) / "steady_state.csv", "sampled trajectories",
               [&](std::ostream& s) { return write_steady_state_csv(report, s); });

    std::cout << "final-year relative drift per population:\n";
    for (int i = 0; i < 7; ++i) {
        std::cout << "  " << kEcoFieldNames[i] << ": "
                  << format_double(report.final_year_drift[i]) << "\n";
    }
    std::cout << "final prevalence: " << format_double(report.final_prevalence) << "\n";
    std::cout << "steady: " << (report.steady ? "true" : "false") << "\n";
    return 0;
}

int cmd_plot(const std::string& summary, const std::string& out, const std::string& panels_csv,
             const std::string& group_by) {
    FigureSpec spec;
    spec.summary_csv = summary;
    spec.output_path = out;
    spec.group_by = group_by;
    if (!panels_csv.empty()) {
        spec.panels.clear();
        std::stringstream ss(panels_csv);
        std::string item;
        while (std::getline(ss, item, ',')) spec.panels.push_back(item);
    }
    emit_svg(spec);
    std::cout << "figure: " << out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled household-economics / schistosomiasis-ecology simulator"};
    app.require_subcommand(1);

    CommonArgs run_args;
    double run_land = -1.0;
    bool run_no_harvest = false;
    auto* run = app.add_subcommand("run", "Scenario suite or single-cell Monte Carlo");
    add_common(run, run_args);
    run->add_option("--land", run_land, "Restrict to one land endowment (ha)");
    run->add_flag("--no-harvest", run_no_harvest, "Only the no-harvest counterfactual cells");

    CommonArgs sweep_args;
    std::string sweep_param;
    std::string sweep_values;
    auto* sweep = app.add_subcommand("sweep", "Sensitivity sweep over one parameter");
    add_common(sweep, sweep_args);
    sweep->add_option("--param", sweep_param, "One of rho, r, n0, p_u, p_h")->required();
    sweep->add_option("--values", sweep_values, "Comma list; config grid otherwise");

    CommonArgs inf_args;
    std::string inf_grid;
    auto* inf = app.add_subcommand("infection-sweep",
                                   "Year-1 fertilizer response to starting prevalence");
    add_common(inf, inf_args);
    inf->add_option("--grid", inf_grid, "Comma list of prevalences; config grid otherwise");

    CommonArgs ss_args;
    int ss_years = 5;
    auto* ss = app.add_subcommand("steady-state", "Ecology-only stationarity check");
    add_common(ss, ss_args, false);
    ss->add_option("--years", ss_years, "Simulated years")->capture_default_str();

    std::string plot_summary, plot_out, plot_panels, plot_group = "auto";
    auto* plot = app.add_subcommand("plot", "Render a summary CSV as a multi-panel SVG");
    plot->add_option("--summary", plot_summary, "Input summary CSV")->required();
    plot->add_option("--out", plot_out, "Output SVG path")->required();
    plot->add_option("--panels", plot_panels, "Comma list of outcomes (default: the 5 panels)");
    plot->add_option("--group-by", plot_group, "auto | scenario | param_value")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    try {
        if (run->parsed()) return cmd_run(run_args, run_land, run_no_harvest);
        if (sweep->parsed()) return cmd_sweep(sweep_args, sweep_param, sweep_values);
        if (inf->parsed()) return cmd_infection_sweep(inf_args, inf_grid);
        if (ss->parsed()) return cmd_steady_state(ss_args, ss_years);
        if (plot->parsed()) return cmd_plot(plot_summary, plot_out, plot_panels, plot_group);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SimError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
