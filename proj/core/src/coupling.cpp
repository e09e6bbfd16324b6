#include "bioecon/coupling.hpp"

#include <cmath>
#include <string>

#include "bioecon/errors.hpp"
#include "bioecon/household_solver.hpp"

namespace bioecon {

void SimConfig::validate() const {
    if (years < 1) throw InvalidStateError("config: years must be >= 1");
    if (members < 1) throw InvalidStateError("config: members must be >= 1");
    if (!(land_ha > 0.0)) throw InvalidStateError("config: land_ha must be > 0");
    if (!(initial_prevalence >= 0.0 && initial_prevalence <= 1.0)) {
        throw InvalidStateError("config: initial_prevalence must be in [0,1]");
    }
    if (!(cure_prob >= 0.0 && cure_prob <= 1.0)) {
        throw InvalidStateError("config: cure_prob must be in [0,1]");
    }
    if (!(dt > 0.0)) throw InvalidStateError("config: dt must be > 0");
    eco.validate();
    hh.validate();
    prices.validate();
    eco_init.validate("config eco_init");
}

int draw_infections(double prevalence, int members, CounterRng& rng) {
    if (!(prevalence >= 0.0 && prevalence <= 1.0)) {
        throw InvalidStateError("draw_infections: prevalence must be in [0,1]");
    }
    int infected = 0;
    for (int m = 0; m < members; ++m) {
        if (rng.bernoulli(prevalence)) ++infected;
    }
    return infected;
}

int draw_cures(int infected, double cure_prob, CounterRng& rng) {
    if (!(cure_prob >= 0.0 && cure_prob <= 1.0)) {
        throw InvalidStateError("draw_cures: cure_prob must be in [0,1]");
    }
    int cured = 0;
    for (int m = 0; m < infected; ++m) {
        if (rng.bernoulli(cure_prob)) ++cured;
    }
    return cured;
}

PeriodResult run_period(const EcoState& eco_state, const SimConfig& config, CounterRng& rng,
                        int year) {
    if (year < 1) throw InvalidStateError("run_period: year must be >= 1");
    const double prevalence = eco_state.prevalence();

    // Step 1: realize this year's infections, then cures (from year 2 on).
    int infected = 0;
    if (config.infection_draws == InfectionDraws::AllMembers) {
        infected = draw_infections(prevalence, config.members, rng);
    } else {
        // Carry over current infections; only susceptibles face a fresh draw.
        int carried = static_cast<int>(std::llround(eco_state.i_humans));
        carried = std::min(std::max(carried, 0), config.members);
        infected = carried + draw_infections(prevalence, config.members - carried, rng);
    }
    if (year >= 2) infected -= draw_cures(infected, config.cure_prob, rng);

    // Step 2: the household's static optimization at the realized labor supply.
    const Endowment endow{config.land_ha, config.members, infected};
    HouseholdSolution sol;
    try {
        sol = solve_household(config.hh, config.prices, endow, config.allow_harvest);
    } catch (SimError& e) {
        throw SolverFailedError("year " + std::to_string(year) + ": " + e.what(), 0.0, 0.0);
    }

    // Step 3: feed the realized counts and choices back into the ecology.
    EcoState state = eco_state;
    state.s_humans = static_cast<double>(config.members - infected);
    state.i_humans = static_cast<double>(infected);
    state = apply_runoff(state, config.eco.rho, sol.decision.fert_kg);
    const double annual_harvest = config.allow_harvest ? sol.outcome.q_v : 0.0;

    IntegrationResult integ;
    try {
        integ = integrate_period(state, config.eco, annual_harvest, 365.0, config.dt);
    } catch (IntegrationDivergedError& e) {
        throw IntegrationDivergedError(e.field_name, e.step_index,
                                       "year " + std::to_string(year));
    }

    PeriodRecord rec;
    rec.year = year;
    rec.infected = infected;
    rec.labor_avail = labor_availability(config.members, infected, config.hh.tau);
    rec.labor_food = sol.decision.labor_food;
    rec.labor_veg = sol.decision.labor_veg;
    rec.leisure = sol.decision.leisure;
    rec.fert_kg = sol.decision.fert_kg;
    rec.fert_per_ha = sol.decision.fert_kg / config.land_ha;
    rec.q_v_kg = sol.outcome.q_v;
    rec.veg_stock_kg = integ.state.n_veg;
    rec.income_kfcfa = sol.outcome.income / 1000.0;
    rec.utility = sol.outcome.utility;
    rec.prevalence_next = integ.state.prevalence();

    return {rec, integ.state, integ.clamps};
}

Trajectory run_trajectory(const SimConfig& config, std::uint64_t replicate) {
    config.validate();

    Trajectory traj;
    traj.config = config;
    traj.replicate = replicate;
    traj.records.reserve(config.years);

    EcoState state = config.eco_init;
    state.s_humans = static_cast<double>(config.members) * (1.0 - config.initial_prevalence);
    state.i_humans = static_cast<double>(config.members) * config.initial_prevalence;

    CounterRng rng(config.seed, replicate);
    for (int year = 1; year <= config.years; ++year) {
        try {
            PeriodResult res = run_period(state, config, rng, year);
            traj.records.push_back(res.record);
            traj.clamps += res.clamps;
            state = res.state;
        } catch (SimError& e) {
            throw SimError("replicate " + std::to_string(replicate) + " (seed " +
                           std::to_string(config.seed) + "): " + e.what());
        }
    }
    traj.final_state = state;
    return traj;
}

} // namespace bioecon
