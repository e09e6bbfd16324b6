#pragma once

#include <array>
#include <vector>

#include "bioecon/eco_types.hpp"

namespace bioecon {

// Right-hand side of the seven-population system at one instant.
// daily_harvest is the constant vegetation withdrawal in kg/day.
// The snail habitat term penalizes only a vegetation deficit: mortality is
// mu2 + chi*max(0, K - N), flat above the carrying capacity.
EcoDerivative eco_rhs(const EcoState& state, const EcoParams& params, double daily_harvest);

// Per-field count of post-step clamps to zero.
struct ClampStats {
    std::array<long, 7> per_field = {0, 0, 0, 0, 0, 0, 0};

    long total() const {
        long t = 0;
        for (long c : per_field) t += c;
        return t;
    }
    ClampStats& operator+=(const ClampStats& other) {
        for (int i = 0; i < 7; ++i) per_field[i] += other.per_field[i];
        return *this;
    }
};

struct IntegrationResult {
    EcoState state;
    ClampStats clamps;
};

// Classical fixed-step fourth-order integration over `days` days with step dt.
// The annual harvest is spread evenly (annual_harvest/365 kg per day) no matter
// how many days are integrated. Any field driven below zero is clamped to zero
// after the step and counted. days/dt must be integral.
IntegrationResult integrate_period(const EcoState& state, const EcoParams& params,
                                   double annual_harvest, double days = 365.0, double dt = 0.1);

// Start-of-period fertilizer runoff shock: multiplies the vegetation stock by
// (1 + rho*fert_kg) and leaves every other population untouched.
EcoState apply_runoff(const EcoState& state, double rho, double fert_kg);

struct SteadyStateReport {
    std::vector<double> sample_days;        // sample times (>= monthly plus year marks)
    std::vector<EcoState> samples;          // state at each sample time
    std::array<double, 7> final_year_drift; // relative change of each population over the last year
    double final_prevalence = 0.0;
    bool steady = false;                    // drift < 1% everywhere and prevalence in [0.22, 0.28]
    ClampStats clamps;
};

// Multi-year run with no harvest and no runoff, used to check that the
// ecological submodel sits at (or settles into) its stationary point.
SteadyStateReport steady_state_run(const EcoParams& params, const EcoState& state0,
                                   int years = 5, double dt = 0.1);

} // namespace bioecon
