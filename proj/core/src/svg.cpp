#include "bioecon/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "bioecon/errors.hpp"

namespace bioecon {

namespace {

constexpr double kPanelW = 360.0;
constexpr double kPanelH = 250.0;
constexpr double kMarginL = 64.0;
constexpr double kMarginR = 16.0;
constexpr double kMarginT = 34.0;
constexpr double kMarginB = 42.0;
constexpr int kColumns = 3;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

struct SeriesKey {
    std::string scenario;
    double land_ha;
    std::string param;
    double param_value;

    bool operator<(const SeriesKey& other) const {
        return std::tie(scenario, land_ha, param, param_value) <
               std::tie(other.scenario, other.land_ha, other.param, other.param_value);
    }
};

struct Series {
    SeriesKey key;
    std::string label;
    std::vector<const SummaryRow*> rows; // sorted by year
};

// Label each series by the fields that actually distinguish the data.
std::vector<Series> build_series(const std::vector<SummaryRow>& rows, const std::string& outcome,
                                 const std::string& group_by) {
    std::map<SeriesKey, std::vector<const SummaryRow*>> grouped;
    std::set<std::string> scenarios;
    std::set<double> lands;
    std::set<double> param_values;
    for (const auto& row : rows) {
        if (row.outcome != outcome) continue;
        grouped[{row.scenario, row.land_ha, row.param, row.param_value}].push_back(&row);
        scenarios.insert(row.scenario);
        lands.insert(row.land_ha);
        if (!row.param.empty()) param_values.insert(row.param_value);
    }

    const bool use_scenario =
        group_by == "scenario" || (group_by == "auto" && scenarios.size() > 1);
    const bool use_param =
        group_by == "param_value" || (group_by == "auto" && param_values.size() > 1);
    const bool use_land = lands.size() > 1;

    std::vector<Series> out;
    for (auto& [key, series_rows] : grouped) {
        std::sort(series_rows.begin(), series_rows.end(),
                  [](const SummaryRow* a, const SummaryRow* b) { return a->year < b->year; });
        std::string label;
        auto append = [&label](const std::string& part) {
            if (!label.empty()) label += ", ";
            label += part;
        };
        if (use_scenario) append(key.scenario);
        if (use_land) append(format_double(key.land_ha) + " ha");
        if (use_param && !key.param.empty()) {
            append(key.param + "=" + format_double(key.param_value));
        }
        if (label.empty()) label = key.scenario.empty() ? "series" : key.scenario;
        out.push_back({key, label, series_rows});
    }
    return out;
}

struct Scale {
    double x0, x1, y0, y1; // data ranges
    double px, py, pw, ph; // plot rectangle

    double sx(double x) const { return px + (x - x0) / (x1 - x0) * pw; }
    double sy(double y) const { return py + ph - (y - y0) / (y1 - y0) * ph; }
};

// Round tick spacing to a 1/2/5 decade step.
std::vector<double> ticks(double lo, double hi, int target) {
    const double span = hi - lo;
    double step = std::pow(10.0, std::floor(std::log10(span / target)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (span / (step * mult) <= target) {
            step *= mult;
            break;
        }
    }
    std::vector<double> out;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
        out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    }
    return out;
}

} // namespace

std::string render_figure(const std::vector<SummaryRow>& rows, const FigureSpec& spec) {
    if (spec.panels.empty()) throw InvalidStateError("figure spec has no panels");

    std::set<std::string> available;
    for (const auto& row : rows) available.insert(row.outcome);
    for (const auto& outcome : spec.panels) {
        if (!available.count(outcome)) {
            std::string have;
            for (const auto& o : available) {
                if (!have.empty()) have += ", ";
                have += o;
            }
            throw IoError("outcome '" + outcome + "' not present in summary (available: " + have +
                          ")");
        }
    }

    const int n_panels = static_cast<int>(spec.panels.size());
    const int cols = std::min(kColumns, n_panels);
    const int rows_n = (n_panels + cols - 1) / cols;
    const double legend_h = 26.0;
    const double width = cols * kPanelW;
    const double height = rows_n * kPanelH + legend_h;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
        << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height)
        << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" fill=\"white\"/>\n";

    // Legend built from the first panel's series; colors are per series key
    // and shared by every panel.
    auto first_series = build_series(rows, spec.panels.front(), spec.group_by);
    std::map<std::string, int> color_of;
    for (const auto& s : first_series) {
        if (!color_of.count(s.label)) {
            const int idx = static_cast<int>(color_of.size());
            color_of[s.label] = idx;
        }
    }

    double lx = 12.0;
    for (const auto& s : first_series) {
        const int ci = color_of[s.label] % 8;
        svg << "<line x1=\"" << num(lx) << "\" y1=\"14\" x2=\"" << num(lx + 22) << "\" y2=\"14\" "
            << "stroke=\"" << kPalette[ci] << "\" stroke-width=\"2.5\""
            << (s.key.scenario == "no-harvest" ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
        lx += 28.0;
        svg << "<text x=\"" << num(lx) << "\" y=\"18\" font-family=\"sans-serif\" "
            << "font-size=\"12\">" << escape_xml(s.label) << "</text>\n";
        lx += 9.0 * static_cast<double>(s.label.size()) + 18.0;
    }

    for (int p = 0; p < n_panels; ++p) {
        const std::string& outcome = spec.panels[p];
        const double ox = (p % cols) * kPanelW;
        const double oy = legend_h + (p / cols) * kPanelH;
        auto series = build_series(rows, outcome, spec.group_by);

        double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
        for (const auto& s : series) {
            for (const auto* r : s.rows) {
                x0 = std::min(x0, static_cast<double>(r->year));
                x1 = std::max(x1, static_cast<double>(r->year));
                y0 = std::min(y0, r->p05);
                y1 = std::max(y1, r->p95);
            }
        }
        if (x0 >= x1) {
            x0 -= 0.5;
            x1 += 0.5;
        }
        if (y0 >= y1) {
            const double pad = std::max(1.0, std::abs(y0) * 0.1);
            y0 -= pad;
            y1 += pad;
        } else {
            const double pad = 0.05 * (y1 - y0);
            y0 -= pad;
            y1 += pad;
        }

        Scale sc{x0, x1, y0, y1, ox + kMarginL, oy + kMarginT, kPanelW - kMarginL - kMarginR,
                 kPanelH - kMarginT - kMarginB};

        const char panel_letter = static_cast<char>('A' + p);
        svg << "<text x=\"" << num(ox + kMarginL) << "\" y=\"" << num(oy + 20)
            << "\" font-family=\"sans-serif\" font-size=\"13\" font-weight=\"bold\">"
            << panel_letter << ": " << escape_xml(outcome) << "</text>\n";

        // axes
        svg << "<line x1=\"" << num(sc.px) << "\" y1=\"" << num(sc.py + sc.ph) << "\" x2=\""
            << num(sc.px + sc.pw) << "\" y2=\"" << num(sc.py + sc.ph)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg << "<line x1=\"" << num(sc.px) << "\" y1=\"" << num(sc.py) << "\" x2=\"" << num(sc.px)
            << "\" y2=\"" << num(sc.py + sc.ph) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

        for (double t : ticks(x0, x1, 8)) {
            const double x = sc.sx(t);
            svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(sc.py + sc.ph) << "\" x2=\""
                << num(x) << "\" y2=\"" << num(sc.py + sc.ph + 4)
                << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
            svg << "<text x=\"" << num(x) << "\" y=\"" << num(sc.py + sc.ph + 16)
                << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
                << num(t) << "</text>\n";
        }
        for (double t : ticks(y0, y1, 5)) {
            const double y = sc.sy(t);
            svg << "<line x1=\"" << num(sc.px - 4) << "\" y1=\"" << num(y) << "\" x2=\""
                << num(sc.px) << "\" y2=\"" << num(y)
                << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
            svg << "<text x=\"" << num(sc.px - 7) << "\" y=\"" << num(y + 3.5)
                << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" << num(t)
                << "</text>\n";
        }
        svg << "<text x=\"" << num(sc.px + 0.5 * sc.pw) << "\" y=\""
            << num(oy + kPanelH - 8) << "\" font-family=\"sans-serif\" font-size=\"11\" "
            << "text-anchor=\"middle\">year</text>\n";

        // bands first so medians draw on top
        for (const auto& s : series) {
            const int ci = color_of.count(s.label) ? color_of[s.label] % 8
                                                   : static_cast<int>(color_of.size()) % 8;
            if (!color_of.count(s.label)) color_of[s.label] = ci;
            std::ostringstream pts;
            for (const auto* r : s.rows) {
                pts << num(sc.sx(r->year)) << "," << num(sc.sy(r->p95)) << " ";
            }
            for (auto it = s.rows.rbegin(); it != s.rows.rend(); ++it) {
                pts << num(sc.sx((*it)->year)) << "," << num(sc.sy((*it)->p05)) << " ";
            }
            svg << "<polygon points=\"" << pts.str() << "\" fill=\"" << kPalette[ci]
                << "\" fill-opacity=\"0.18\" stroke=\"none\"/>\n";
        }
        for (const auto& s : series) {
            const int ci = color_of[s.label] % 8;
            std::ostringstream pts;
            for (const auto* r : s.rows) {
                pts << num(sc.sx(r->year)) << "," << num(sc.sy(r->median)) << " ";
            }
            svg << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\""
                << kPalette[ci] << "\" stroke-width=\"1.8\""
                << (s.key.scenario == "no-harvest" ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
        }
    }

    svg << "</svg>\n";
    return svg.str();
}

std::string emit_svg(const FigureSpec& spec) {
    const auto rows = read_summary_csv(spec.summary_csv);
    const std::string doc = render_figure(rows, spec);
    if (!spec.output_path.empty()) {
        std::ofstream out(spec.output_path, std::ios::binary);
        if (!out) throw IoError("cannot open output file: " + spec.output_path);
        out << doc;
        if (!out) throw IoError("write failed: " + spec.output_path);
    }
    return doc;
}

} // namespace bioecon
