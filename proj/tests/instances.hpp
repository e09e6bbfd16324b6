#pragma once

#include "bioecon/household_types.hpp"
#include "bioecon/rng.hpp"

namespace bioecon::testing {

struct Instance {
    HouseholdParams hh;
    Prices prices;
    Endowment endow;
};

// Deterministic random household instances scattered around the baseline
// calibration; exponent groups are renormalized to keep the invariants.
inline Instance random_instance(CounterRng& rng) {
    auto jitter = [&rng](double v, double rel) {
        return v * (1.0 + rel * (2.0 * rng.next_double() - 1.0));
    };

    Instance inst;
    HouseholdParams& h = inst.hh;
    h = HouseholdParams::baseline();

    double tf = jitter(h.theta_f, 0.15), tg = jitter(h.theta_g, 0.15);
    double th = jitter(h.theta_h, 0.15), tl = jitter(h.theta_l, 0.15);
    const double tsum = tf + tg + th + tl;
    h.theta_f = tf / tsum;
    h.theta_g = tg / tsum;
    h.theta_h = th / tsum;
    h.theta_l = tl / tsum;

    double ad = jitter(h.alpha_d, 0.15), al = jitter(h.alpha_l, 0.15);
    double au = jitter(h.alpha_u, 0.15), av = jitter(h.alpha_v, 0.15);
    const double asum = ad + al + au + av;
    h.alpha_d = ad / asum;
    h.alpha_l = al / asum;
    h.alpha_u = au / asum;
    h.alpha_v = av / asum;

    h.h_f = jitter(h.h_f, 0.5);
    h.phi = 0.25 + 0.1 * rng.next_double();
    h.omega = 0.5 + 0.2 * rng.next_double();
    h.beta_v = jitter(h.beta_v, 0.2);
    h.gamma1 = 0.2 + 0.12 * rng.next_double();
    h.scale_f = 1.0 + 3.0 * rng.next_double();
    h.tau = 0.4 + 0.2 * rng.next_double();

    inst.prices.p_f = jitter(290.0, 0.3);
    inst.prices.p_g = jitter(500.0, 0.3);
    inst.prices.p_u = jitter(300.0, 0.3);

    const double lands[] = {0.5, 2.0, 5.5};
    inst.endow.land_ha = lands[rng.next_u64() % 3];
    inst.endow.members = 10;
    inst.endow.infected = static_cast<int>(rng.next_u64() % 11);
    return inst;
}

} // namespace bioecon::testing
