#pragma once

#include <array>

#include "bioecon/household_types.hpp"

namespace bioecon::testing {

struct OracleResult {
    double utility = 0.0;
    std::array<double, 3> choice = {0.0, 0.0, 0.0}; // labor_food, labor_veg, fert_kg
};

// Brute-force reference maximizer: an exhaustive grid over the three
// production choices with two refinement passes around the incumbent, and the
// consumption split evaluated in closed form. Implemented from the model
// formulas directly; shares no code with the production solver.
OracleResult grid_oracle(const HouseholdParams& params, const Prices& prices,
                         const Endowment& endow, bool allow_harvest);

} // namespace bioecon::testing
