#pragma once

namespace bioecon {

// Preference, production, harvest and morbidity parameters of the
// agricultural household.
struct HouseholdParams {
    double theta_f = 0.55;  // utility exponent on food
    double theta_g = 0.3;   // utility exponent on the aggregate household good
    double theta_h = 0.1;   // utility exponent on health status
    double theta_l = 0.05;  // utility exponent on leisure
    double h_f = 0.000384;  // health elasticity of food consumption
    double alpha_d = 0.4;   // CES share: land
    double alpha_l = 0.5;   // CES share: labor
    double alpha_u = 0.05;  // CES share: fertilizer
    double alpha_v = 0.05;  // CES share: compost
    double phi = 0.3;       // CES substitution parameter
    double omega = 0.6;     // mass fraction retained when composting vegetation
    double beta_v = 14.4942; // harvest productivity (kg per person-day^gamma1)
    double gamma1 = 0.2595; // harvest labor exponent
    double scale_f = 2.0;   // CES output scale (kg of food per CES unit)
    double tau = 0.5;       // labor availability of an infected member, in [0,1)
    double fert_max_per_ha = 1000.0; // fertilizer search bound (kg/ha), never binding

    static HouseholdParams baseline() { return HouseholdParams{}; }

    // Throws InvalidStateError when exponent groups do not sum to one or a
    // field is outside its admissible range.
    void validate() const;
};

// Market prices in FCFA. The solver normalizes by p_f internally, so only
// ratios matter for decisions.
struct Prices {
    double p_f = 290.0; // food (per kg)
    double p_g = 500.0; // aggregate household good (per unit)
    double p_u = 300.0; // urea fertilizer (per kg)

    static Prices baseline() { return Prices{}; }
    void validate() const;
};

// What the household is endowed with in one period.
struct Endowment {
    double land_ha = 2.0;
    int members = 10;
    int infected = 0;

    void validate() const;
};

// One period's chosen allocation. The time and cash constraints both bind.
struct Decision {
    double labor_food = 0.0; // person-days in food production
    double labor_veg = 0.0;  // person-days harvesting vegetation
    double leisure = 0.0;    // person-days of leisure
    double fert_kg = 0.0;    // purchased fertilizer
    double c_f = 0.0;        // food consumption (kg)
    double c_g = 0.0;        // household-good consumption (units)
};

// Realized production-side outcomes at a Decision.
struct Outcome {
    double q_f = 0.0;     // food output (kg)
    double q_v = 0.0;     // harvested vegetation (kg)
    double income = 0.0;  // p_f*q_f - p_u*fert_kg, FCFA
    double health = 0.0;  // health index
    double utility = 0.0; // utility index
};

// --- production, health and utility primitives ---

// Vegetation harvested from labor_veg person-days: beta_v * labor^gamma1.
double harvest_production(double labor_veg, const HouseholdParams& params);

// CES food output from land, labor, fertilizer and compost (compost_kg is the
// already-composted mass, i.e. omega*q_v). Zero inputs contribute zero terms.
double food_production(double labor_food, double land_ha, double fert_kg, double compost_kg,
                       const HouseholdParams& params);

// exp(susceptible share) * c_f^h_f; defined as 0 at c_f = 0 so that more food
// consumption never lowers the index.
double health_status(int infected, int susceptible, double c_f, double h_f);

// Cobb-Douglas utility over food, the household good, health and leisure.
// A zero exponent makes its factor 1, so 0^0 terms drop out.
double utility(double c_f, double c_g, double leisure, double health,
               const HouseholdParams& params);

// Person-days available per year: 365*((members - infected) + tau*infected).
double labor_availability(int members, int infected, double tau);

} // namespace bioecon
