#pragma once

#include <string>
#include <vector>

#include "bioecon/csv.hpp"

namespace bioecon {

// A multi-panel median-plus-band figure built from a summary CSV.
struct FigureSpec {
    std::string summary_csv;
    std::vector<std::string> panels = {"veg_stock_t", "infection_rate", "labor_avail",
                                       "fert_per_ha", "income_kfcfa"};
    // Legend grouping: "auto" derives series labels from whichever of
    // scenario / land_ha / param_value actually vary in the data.
    std::string group_by = "auto";
    std::string output_path; // when non-empty, emit_svg also writes the file
};

// Renders one polyline (median) and one translucent band polygon (p05..p95)
// per series and panel. Standalone SVG 1.1, no external assets.
std::string render_figure(const std::vector<SummaryRow>& rows, const FigureSpec& spec);

// Reads spec.summary_csv, renders, and writes spec.output_path when set.
// Returns the SVG document.
std::string emit_svg(const FigureSpec& spec);

} // namespace bioecon
