#include "bioecon/household_types.hpp"

#include <cmath>
#include <string>

#include "bioecon/errors.hpp"

namespace bioecon {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidStateError(msg);
}

// x^e with the Cobb-Douglas conventions: e == 0 gives 1, x == 0 gives 0.
double pow_cd(double x, double e) {
    if (e == 0.0) return 1.0;
    if (x == 0.0) return 0.0;
    return std::pow(x, e);
}

} // namespace

void HouseholdParams::validate() const {
    const double fields[] = {theta_f, theta_g, theta_h, theta_l, h_f,     alpha_d,
                             alpha_l, alpha_u, alpha_v, phi,     omega,   beta_v,
                             gamma1,  scale_f, tau,     fert_max_per_ha};
    for (double f : fields) {
        require(std::isfinite(f) && f >= 0.0, "household parameter must be finite and >= 0");
    }
    const double theta_sum = theta_f + theta_g + theta_h + theta_l;
    require(std::abs(theta_sum - 1.0) <= 1e-9, "utility exponents must sum to 1, got " +
                                                   std::to_string(theta_sum));
    const double alpha_sum = alpha_d + alpha_l + alpha_u + alpha_v;
    require(std::abs(alpha_sum - 1.0) <= 1e-9,
            "CES shares must sum to 1, got " + std::to_string(alpha_sum));
    require(omega > 0.0 && omega < 1.0, "omega must be in (0,1)");
    require(phi > 0.0 && phi < 1.0, "phi must be in (0,1)");
    require(tau >= 0.0 && tau < 1.0, "tau must be in [0,1)");
    require(scale_f > 0.0, "scale_f must be > 0");
    require(fert_max_per_ha > 0.0, "fert_max_per_ha must be > 0");
}

void Prices::validate() const {
    require(std::isfinite(p_f) && p_f > 0.0, "p_f must be > 0");
    require(std::isfinite(p_g) && p_g > 0.0, "p_g must be > 0");
    require(std::isfinite(p_u) && p_u > 0.0, "p_u must be > 0");
}

void Endowment::validate() const {
    require(std::isfinite(land_ha) && land_ha > 0.0, "land_ha must be > 0");
    require(members >= 1, "members must be >= 1");
    require(infected >= 0 && infected <= members, "infected must be in [0, members]");
}

double harvest_production(double labor_veg, const HouseholdParams& params) {
    require(labor_veg >= 0.0 && std::isfinite(labor_veg), "labor_veg must be finite and >= 0");
    if (labor_veg == 0.0) return 0.0;
    return params.beta_v * std::pow(labor_veg, params.gamma1);
}

double food_production(double labor_food, double land_ha, double fert_kg, double compost_kg,
                       const HouseholdParams& params) {
    require(labor_food >= 0.0 && land_ha >= 0.0 && fert_kg >= 0.0 && compost_kg >= 0.0,
            "food_production inputs must be >= 0");
    const double phi = params.phi;
    const double sum = params.alpha_d * pow_cd(land_ha, phi) +
                       params.alpha_l * pow_cd(labor_food, phi) +
                       params.alpha_u * pow_cd(fert_kg, phi) +
                       params.alpha_v * pow_cd(compost_kg, phi);
    if (sum <= 0.0) return 0.0;
    return params.scale_f * std::pow(sum, 1.0 / phi);
}

double health_status(int infected, int susceptible, double c_f, double h_f) {
    require(infected >= 0 && susceptible >= 0 && infected + susceptible >= 1,
            "health_status needs at least one household member");
    require(c_f >= 0.0 && std::isfinite(c_f), "c_f must be finite and >= 0");
    if (c_f == 0.0) return 0.0;
    const double share =
        static_cast<double>(susceptible) / static_cast<double>(infected + susceptible);
    return std::exp(share) * std::pow(c_f, h_f);
}

double utility(double c_f, double c_g, double leisure, double health,
               const HouseholdParams& params) {
    require(c_f >= 0.0 && c_g >= 0.0 && leisure >= 0.0 && health >= 0.0,
            "utility arguments must be >= 0");
    return pow_cd(c_f, params.theta_f) * pow_cd(c_g, params.theta_g) *
           pow_cd(health, params.theta_h) * pow_cd(leisure, params.theta_l);
}

double labor_availability(int members, int infected, double tau) {
    require(members >= 1 && infected >= 0 && infected <= members,
            "labor_availability: infected must be in [0, members]");
    return 365.0 * (static_cast<double>(members - infected) + tau * static_cast<double>(infected));
}

} // namespace bioecon
