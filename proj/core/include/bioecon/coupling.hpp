#pragma once

#include <cstdint>
#include <vector>

#include "bioecon/eco_dynamics.hpp"
#include "bioecon/eco_types.hpp"
#include "bioecon/household_types.hpp"
#include "bioecon/rng.hpp"

namespace bioecon {

// Who draws a fresh infection each period: every member (the default), or
// only members not already infected, with existing infections carried over.
enum class InfectionDraws { AllMembers, SusceptibleOnly };

// Full specification of one simulated scenario cell.
struct SimConfig {
    int years = 20;
    int members = 10;
    double land_ha = 2.0;
    double initial_prevalence = 0.25;
    double cure_prob = 0.25;
    bool allow_harvest = true;
    InfectionDraws infection_draws = InfectionDraws::AllMembers;
    EcoParams eco;
    EcoState eco_init = EcoState::baseline(); // humans are rescaled per trajectory
    HouseholdParams hh;
    Prices prices;
    double dt = 0.1;
    std::uint64_t seed = 12345;

    void validate() const;
};

// One year of the coupled simulation.
struct PeriodRecord {
    int year = 0;            // 1-based
    int infected = 0;        // realized infected members after cures
    double labor_avail = 0.0;
    double labor_food = 0.0;
    double labor_veg = 0.0;
    double leisure = 0.0;
    double fert_kg = 0.0;
    double fert_per_ha = 0.0;
    double q_v_kg = 0.0;
    double veg_stock_kg = 0.0;   // end-of-period vegetation in the water source
    double income_kfcfa = 0.0;
    double utility = 0.0;
    double prevalence_next = 0.0; // village prevalence feeding next year's draws
};

struct Trajectory {
    SimConfig config;
    std::uint64_t replicate = 0;
    std::vector<PeriodRecord> records;
    EcoState final_state;
    ClampStats clamps;
};

// Number of infected among `members` independent Bernoulli(prevalence) draws.
int draw_infections(double prevalence, int members, CounterRng& rng);

// Number cured among `infected` independent Bernoulli(cure_prob) draws.
int draw_cures(int infected, double cure_prob, CounterRng& rng);

struct PeriodResult {
    PeriodRecord record;
    EcoState state; // end-of-year ecological state
    ClampStats clamps;
};

// One annual period: realize infections (and cures from year 2 on), solve the
// household, overwrite the ODE's human populations with the realized integer
// counts, apply the fertilizer-runoff shock, and integrate 365 days with the
// chosen harvest.
PeriodResult run_period(const EcoState& eco_state, const SimConfig& config, CounterRng& rng,
                        int year);

// Chains run_period over config.years from the configured starting state,
// with humans split members*(1-initial_prevalence) / members*initial_prevalence.
// Replicate r draws from the counter-based stream (config.seed, r).
Trajectory run_trajectory(const SimConfig& config, std::uint64_t replicate);

} // namespace bioecon
