#pragma once

#include "bioecon/household_types.hpp"

namespace bioecon {

struct HouseholdSolution {
    Decision decision;
    Outcome outcome;
};

// Maximizes period utility subject to the binding time and cash constraints.
//
// The problem decomposes: given (labor_food, labor_veg, fert_kg), the optimal
// consumption split is closed-form Cobb-Douglas with effective food exponent
// theta_f + theta_h*h_f, so the numerical search runs only over the three
// production-side choices. The outer search is a derivative-free simplex
// method multi-started from deterministic points, then polished by projected
// coordinate descent. Deterministic: no RNG anywhere.
//
// With allow_harvest = false, labor_veg is pinned to zero.
//
// Throws SolverFailedError if no positive-utility point is found even though
// one exists, after doubling the multi-starts once.
HouseholdSolution solve_household(const HouseholdParams& params, const Prices& prices,
                                  const Endowment& endow, bool allow_harvest = true);

// Per-condition relative residuals of the household first-order conditions.
// The shadow price lambda comes from the household-good condition and the
// shadow wage from the leisure condition (or, at a leisure corner, from the
// food-labor condition). Conditions at a corner use complementary slackness:
// the residual is the positive part of the violated inequality.
struct KktReport {
    double res_food_consumption = 0.0; // marginal benefit of food vs lambda*p_f
    double res_good_consumption = 0.0; // zero by construction of lambda
    double res_leisure = 0.0;          // marginal utility of leisure vs lambda*w
    double res_labor_food = 0.0;       // value of marginal product of food labor vs w
    double res_labor_veg = 0.0;        // value of marginal product of harvest labor vs w
    double res_fertilizer = 0.0;       // value of marginal product of fertilizer vs p_u
    double shadow_price = 0.0;         // lambda, marginal utility of cash
    double shadow_wage = 0.0;          // w, internal value of a person-day
    double max_residual = 0.0;

    bool leisure_at_corner = false;
    bool fert_at_corner = false;
    bool veg_at_corner = false;
};

// Checks a decision against the first-order conditions. The decision must
// satisfy the binding time and cash constraints to 1e-8 relative, otherwise
// InfeasibleDecisionError is thrown. When allow_harvest is false the harvest
// condition is externally constrained and reported with residual zero.
KktReport kkt_residuals(const Decision& decision, const HouseholdParams& params,
                        const Prices& prices, const Endowment& endow, bool allow_harvest = true);

} // namespace bioecon
