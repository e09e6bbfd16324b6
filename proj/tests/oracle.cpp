#include "oracle.hpp"

#include <algorithm>
#include <cmath>

namespace bioecon::testing {

namespace {

struct OracleEval {
    const HouseholdParams& p;
    double pg, pu; // prices over p_f
    double land;
    double a_l;
    double exp_share;
    bool harvest;

    double operator()(double lf, double lv, double qu) const {
        const double leisure = a_l - lf - lv;
        if (leisure < 0.0) return 0.0;
        const double qv = harvest && lv > 0.0 ? p.beta_v * std::pow(lv, p.gamma1) : 0.0;
        const double compost = p.omega * qv;
        double sum = p.alpha_d * std::pow(land, p.phi);
        if (lf > 0.0) sum += p.alpha_l * std::pow(lf, p.phi);
        if (qu > 0.0) sum += p.alpha_u * std::pow(qu, p.phi);
        if (compost > 0.0) sum += p.alpha_v * std::pow(compost, p.phi);
        const double qf = p.scale_f * std::pow(sum, 1.0 / p.phi);
        const double budget = qf - pu * qu;
        if (budget <= 0.0) return 0.0;

        // optimal split of the consumption budget between food and the good
        const double a = p.theta_f + p.theta_h * p.h_f;
        const double cf = a / (a + p.theta_g) * budget;
        const double cg = (budget - cf) / pg;
        const double health = exp_share * std::pow(cf, p.h_f);

        double u = std::pow(cf, p.theta_f) * std::pow(cg, p.theta_g) *
                   std::pow(health, p.theta_h);
        u *= p.theta_l > 0.0 ? std::pow(leisure, p.theta_l) : 1.0;
        return u;
    }
};

} // namespace

OracleResult grid_oracle(const HouseholdParams& params, const Prices& prices,
                         const Endowment& endow, bool allow_harvest) {
    const double a_l =
        365.0 * (endow.members - endow.infected + params.tau * endow.infected);
    OracleEval eval{params,
                    prices.p_g / prices.p_f,
                    prices.p_u / prices.p_f,
                    endow.land_ha,
                    a_l,
                    std::exp(static_cast<double>(endow.members - endow.infected) / endow.members),
                    allow_harvest};
    const double fert_max = params.fert_max_per_ha * endow.land_ha;

    // pass 0 spans the full box; passes 1 and 2 zoom one cell around the best
    double lf_lo = 0.0, lf_hi = a_l;
    double lv_lo = 0.0, lv_hi = allow_harvest ? a_l : 0.0;
    double qu_lo = 0.0, qu_hi = fert_max;

    OracleResult best;
    const int n_lf = 48, n_lv = 40, n_qu = 48;
    for (int pass = 0; pass < 3; ++pass) {
        const double lf_step = (lf_hi - lf_lo) / (n_lf - 1);
        const double lv_step = lv_hi > lv_lo ? (lv_hi - lv_lo) / (n_lv - 1) : 0.0;
        const double qu_step = (qu_hi - qu_lo) / (n_qu - 1);

        OracleResult pass_best;
        for (int i = 0; i < n_lf; ++i) {
            const double lf = lf_lo + i * lf_step;
            if (lf > a_l) break;
            for (int j = 0; j < (lv_step > 0.0 ? n_lv : 1); ++j) {
                const double lv = lv_lo + j * lv_step;
                if (lf + lv > a_l) break;
                for (int k = 0; k < n_qu; ++k) {
                    const double qu = qu_lo + k * qu_step;
                    const double u = eval(lf, lv, qu);
                    if (u > pass_best.utility) pass_best = {u, {lf, lv, qu}};
                }
            }
        }
        if (pass_best.utility > best.utility) best = pass_best;

        const auto& c = best.choice;
        lf_lo = std::max(0.0, c[0] - lf_step);
        lf_hi = std::min(a_l, c[0] + lf_step);
        if (lv_step > 0.0) {
            lv_lo = std::max(0.0, c[1] - lv_step);
            lv_hi = std::min(a_l, c[1] + lv_step);
        }
        qu_lo = std::max(0.0, c[2] - qu_step);
        qu_hi = std::min(fert_max, c[2] + qu_step);
    }
    return best;
}

} // namespace bioecon::testing
