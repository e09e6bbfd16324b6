#pragma once

#include <array>
#include <string_view>

namespace bioecon {

// The seven coupled populations of the water-point ecosystem. Humans are
// real-valued inside the ODE; the annual coupling overwrites them with the
// realized integer counts.
struct EcoState {
    double n_veg = 0.0;      // aquatic vegetation mass (kg)
    double s_snails = 0.0;   // susceptible snails
    double i_snails = 0.0;   // infected snails
    double miracidia = 0.0;  // free-living miracidia
    double cercariae = 0.0;  // free-living cercariae
    double s_humans = 0.0;   // susceptible humans
    double i_humans = 0.0;   // infected humans

    // Baseline starting populations (village water access point, 10-person
    // household scale).
    static EcoState baseline();

    // Infected share of the human population; 0 when there are no humans.
    double prevalence() const {
        const double total = s_humans + i_humans;
        return total > 0.0 ? i_humans / total : 0.0;
    }

    std::array<double, 7> to_array() const {
        return {n_veg, s_snails, i_snails, miracidia, cercariae, s_humans, i_humans};
    }
    static EcoState from_array(const std::array<double, 7>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
    }

    // Throws InvalidStateError if any field is negative or non-finite.
    void validate(std::string_view context) const;
};

// Field names in to_array() order, used for diagnostics and CSV headers.
constexpr std::array<std::string_view, 7> kEcoFieldNames = {
    "n_veg", "s_snails", "i_snails", "miracidia", "cercariae", "s_humans", "i_humans"};

// Daily rates and capacities of the disease-ecology submodel.
struct EcoParams {
    double r = 0.05;           // vegetation net growth rate (1/day)
    double cap_k = 28906.5;    // vegetation carrying capacity (kg)
    double rho = 0.01;         // fertilizer-runoff effect on vegetation (per kg, per period)
    double n0 = 0.01;          // vegetation recolonization rate (kg/day)
    double lambda_cap2 = 100.0; // snail recruitment rate (snails/day)
    double beta1 = 1.766e-8;   // cercariae -> human contact rate
    double beta2 = 0.615;      // miracidia -> snail infection probability
    double mu2 = 0.008;        // snail natural mortality (1/day)
    double mu3 = 2.5;          // miracidial mortality (1/day)
    double mu4 = 0.004;        // cercarial mortality (1/day)
    double delta2 = 0.0004012; // extra snail mortality from infection (1/day)
    double lambda1 = 50.0;     // miracidia hatching rate
    double lambda2 = 2.6;      // cercarial emergence rate (1/day)
    double alpha1 = 0.8e-8;    // saturation of cercarial infectivity
    double m0 = 1.0e6;         // miracidia-snail contact rate
    double epsilon = 0.30;     // saturation of miracidial infectivity
    double chi = 0.02842;      // snail death rate per kg of vegetation deficit
    double k_eggs = 300.0;     // eggs shed per infected human
    double eta = 0.0068;       // human treatment (recovery) rate (1/day)

    static EcoParams baseline() { return EcoParams{}; }

    // Throws InvalidStateError on a negative rate, cap_k <= 0 or beta2 outside [0,1].
    void validate() const;
};

// Instantaneous rates of change, one per EcoState field (units per day).
// ds_humans + di_humans is zero by construction.
struct EcoDerivative {
    double dn_veg = 0.0;
    double ds_snails = 0.0;
    double di_snails = 0.0;
    double dmiracidia = 0.0;
    double dcercariae = 0.0;
    double ds_humans = 0.0;
    double di_humans = 0.0;

    std::array<double, 7> to_array() const {
        return {dn_veg, ds_snails, di_snails, dmiracidia, dcercariae, ds_humans, di_humans};
    }
};

} // namespace bioecon
