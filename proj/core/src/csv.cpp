#include "bioecon/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "bioecon/errors.hpp"

namespace bioecon {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw IoError("format_double failed");
    return std::string(buf, ptr);
}

std::size_t write_summary_csv(const std::vector<PanelSummary>& summaries, std::ostream& sink) {
    struct Row {
        const PanelSummary* cell;
        int year;
        int metric;
    };
    std::vector<Row> rows;
    for (const auto& cell : summaries) {
        for (int year = 1; year <= static_cast<int>(cell.per_year.size()); ++year) {
            for (int m = 0; m < kMetricCount; ++m) rows.push_back({&cell, year, m});
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.cell->scenario, a.cell->land_ha, a.cell->param_value, a.year,
                        kMetricNames[a.metric]) <
               std::tie(b.cell->scenario, b.cell->land_ha, b.cell->param_value, b.year,
                        kMetricNames[b.metric]);
    });

    std::string out = "scenario,land_ha,param,param_value,year,outcome,median,p05,p95,replicates\n";
    for (const Row& row : rows) {
        const PanelSummary& cell = *row.cell;
        const Band& band = cell.per_year[row.year - 1][row.metric];
        out += cell.scenario;
        out += ',';
        out += format_double(cell.land_ha);
        out += ',';
        out += cell.param;
        out += ',';
        if (!cell.param.empty()) out += format_double(cell.param_value);
        out += ',';
        out += std::to_string(row.year);
        out += ',';
        out += kMetricNames[row.metric];
        out += ',';
        out += format_double(band.median);
        out += ',';
        out += format_double(band.p05);
        out += ',';
        out += format_double(band.p95);
        out += ',';
        out += std::to_string(cell.replicates);
        out += '\n';
    }
    sink << out;
    if (!sink) throw IoError("write_summary_csv: sink write failed");
    return out.size();
}

std::size_t write_replicates_csv(const std::vector<Trajectory>& trajectories,
                                 std::ostream& sink) {
    std::string out =
        "replicate,year,infected,labor_avail,labor_food,labor_veg,leisure,fert_kg,"
        "fert_per_ha,q_v_kg,veg_stock_kg,income_kfcfa,utility,prevalence_next\n";
    for (const auto& traj : trajectories) {
        for (const auto& rec : traj.records) {
            out += std::to_string(traj.replicate);
            out += ',';
            out += std::to_string(rec.year);
            out += ',';
            out += std::to_string(rec.infected);
            out += ',';
            out += format_double(rec.labor_avail);
            out += ',';
            out += format_double(rec.labor_food);
            out += ',';
            out += format_double(rec.labor_veg);
            out += ',';
            out += format_double(rec.leisure);
            out += ',';
            out += format_double(rec.fert_kg);
            out += ',';
            out += format_double(rec.fert_per_ha);
            out += ',';
            out += format_double(rec.q_v_kg);
            out += ',';
            out += format_double(rec.veg_stock_kg);
            out += ',';
            out += format_double(rec.income_kfcfa);
            out += ',';
            out += format_double(rec.utility);
            out += ',';
            out += format_double(rec.prevalence_next);
            out += '\n';
        }
    }
    sink << out;
    if (!sink) throw IoError("write_replicates_csv: sink write failed");
    return out.size();
}

std::size_t write_steady_state_csv(const SteadyStateReport& report, std::ostream& sink) {
    std::string out = "day";
    for (auto name : kEcoFieldNames) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
        out += format_double(report.sample_days[i]);
        for (double v : report.samples[i].to_array()) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    sink << out;
    if (!sink) throw IoError("write_steady_state_csv: sink write failed");
    return out.size();
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double to_double(const std::string& s, const std::string& path) {
    if (s.empty()) return 0.0;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw IoError(path + ": malformed number '" + s + "'");
    }
    return v;
}

} // namespace

std::vector<SummaryRow> read_summary_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open summary CSV: " + path);

    std::string line;
    if (!std::getline(in, line)) throw IoError(path + ": empty file");
    if (line.rfind("scenario,land_ha,param,param_value,year,outcome", 0) != 0) {
        throw IoError(path + ": unexpected header '" + line + "'");
    }

    std::vector<SummaryRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_line(line);
        if (f.size() != 10) {
            throw IoError(path + ": expected 10 fields, got " + std::to_string(f.size()));
        }
        SummaryRow row;
        row.scenario = f[0];
        row.land_ha = to_double(f[1], path);
        row.param = f[2];
        row.param_value = to_double(f[3], path);
        row.year = static_cast<int>(to_double(f[4], path));
        row.outcome = f[5];
        row.median = to_double(f[6], path);
        row.p05 = to_double(f[7], path);
        row.p95 = to_double(f[8], path);
        row.replicates = static_cast<int>(to_double(f[9], path));
        rows.push_back(row);
    }
    return rows;
}

} // namespace bioecon
