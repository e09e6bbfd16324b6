#include "bioecon/household_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "bioecon/errors.hpp"

namespace bioecon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Everything the objective needs, with prices normalized by p_f.
struct Problem {
    HouseholdParams hh;
    double pg = 0.0;      // p_g / p_f
    double pu = 0.0;      // p_u / p_f
    double land = 0.0;
    int members = 0;
    int infected = 0;
    double a_l = 0.0;     // available person-days
    double fert_max = 0.0;
    double exp_share = 0.0; // exp(susceptible share), decision-invariant
    double kappa_f = 0.0;   // consumption-budget share of food
    bool allow_harvest = true;

    Problem(const HouseholdParams& params, const Prices& prices, const Endowment& endow,
            bool harvest)
        : hh(params), allow_harvest(harvest) {
        params.validate();
        prices.validate();
        endow.validate();
        pg = prices.p_g / prices.p_f;
        pu = prices.p_u / prices.p_f;
        land = endow.land_ha;
        members = endow.members;
        infected = endow.infected;
        a_l = labor_availability(endow.members, endow.infected, params.tau);
        fert_max = params.fert_max_per_ha * endow.land_ha;
        exp_share = std::exp(static_cast<double>(endow.members - endow.infected) /
                             static_cast<double>(endow.members));
        const double eff_food = params.theta_f + params.theta_h * params.h_f;
        kappa_f = eff_food / (eff_food + params.theta_g);
    }

    // x = (labor_food, labor_veg, fert_kg), assumed inside the feasible box.
    double objective(const std::array<double, 3>& x) const {
        const double q_v = allow_harvest ? harvest_production(x[1], hh) : 0.0;
        const double q_f = food_production(x[0], land, x[2], hh.omega * q_v, hh);
        const double budget = q_f - pu * x[2];
        const double leisure = a_l - x[0] - x[1];
        if (budget <= 0.0 || leisure < 0.0) return 0.0;
        const double c_f = kappa_f * budget;
        const double c_g = (budget - c_f) / pg;
        const double health = c_f > 0.0 ? exp_share * std::pow(c_f, hh.h_f) : 0.0;
        return utility(c_f, c_g, leisure, health, hh);
    }

    std::array<double, 3> project(std::array<double, 3> x) const {
        x[0] = std::clamp(x[0], 0.0, a_l);
        x[1] = allow_harvest ? std::clamp(x[1], 0.0, a_l) : 0.0;
        x[2] = std::clamp(x[2], 0.0, fert_max);
        const double labor = x[0] + x[1];
        if (labor > a_l && labor > 0.0) {
            const double shrink = a_l / labor;
            x[0] *= shrink;
            x[1] *= shrink;
        }
        return x;
    }
};

// Golden-section maximization on [lo, hi]; the coordinate slices of the
// objective are log-concave, hence unimodal.
double golden_max(double lo, double hi, const auto& f) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 160 && (b - a) > 1e-12 * (std::abs(a) + std::abs(b) + 1.0); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// Classic Nelder-Mead on the projected objective (maximization).
std::array<double, 3> nelder_mead(const Problem& prob, std::array<double, 3> start,
                                  int max_iter) {
    struct Vertex {
        std::array<double, 3> x;
        double f;
    };
    const double step_labor = std::max(0.05 * prob.a_l, 1.0);
    const double step_fert = std::max(1.0, 0.25 * start[2]);

    std::vector<Vertex> simplex;
    auto add_vertex = [&](std::array<double, 3> x) {
        x = prob.project(x);
        simplex.push_back({x, prob.objective(x)});
    };
    add_vertex(start);
    add_vertex({start[0] + step_labor, start[1], start[2]});
    if (prob.allow_harvest) add_vertex({start[0], start[1] + step_labor, start[2]});
    add_vertex({start[0], start[1], start[2] + step_fert});

    const std::size_t n = simplex.size() - 1; // 2 or 3 active dimensions
    auto by_f = [](const Vertex& a, const Vertex& b) { return a.f > b.f; };

    for (int it = 0; it < max_iter; ++it) {
        std::sort(simplex.begin(), simplex.end(), by_f);
        const Vertex& best = simplex.front();
        Vertex& worst = simplex.back();
        if (best.f - worst.f <= 1e-13 * (std::abs(best.f) + 1e-300)) break;

        std::array<double, 3> centroid = {0.0, 0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            for (int k = 0; k < 3; ++k) centroid[k] += simplex[i].x[k];
        }
        for (int k = 0; k < 3; ++k) centroid[k] /= static_cast<double>(n);

        auto along = [&](double t) {
            std::array<double, 3> x;
            for (int k = 0; k < 3; ++k) x[k] = centroid[k] + t * (centroid[k] - worst.x[k]);
            return prob.project(x);
        };

        auto reflect = along(1.0);
        const double f_reflect = prob.objective(reflect);
        if (f_reflect > best.f) {
            auto expand = along(2.0);
            const double f_expand = prob.objective(expand);
            if (f_expand > f_reflect) {
                worst = {expand, f_expand};
            } else {
                worst = {reflect, f_reflect};
            }
        } else if (f_reflect > simplex[n - 1].f) {
            worst = {reflect, f_reflect};
        } else {
            auto contract = along(f_reflect > worst.f ? 0.5 : -0.5);
            const double f_contract = prob.objective(contract);
            if (f_contract > std::max(f_reflect, worst.f)) {
                worst = {contract, f_contract};
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    for (int k = 0; k < 3; ++k) {
                        simplex[i].x[k] = best.x[k] + 0.5 * (simplex[i].x[k] - best.x[k]);
                    }
                    simplex[i].x = prob.project(simplex[i].x);
                    simplex[i].f = prob.objective(simplex[i].x);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_f);
    return simplex.front().x;
}

// Cyclic golden-section line searches under the box and simplex constraints.
std::array<double, 3> coordinate_polish(const Problem& prob, std::array<double, 3> x) {
    x = prob.project(x);
    double f_cur = prob.objective(x);
    for (int sweep = 0; sweep < 120; ++sweep) {
        const double f_before = f_cur;
        for (int dim = 0; dim < 3; ++dim) {
            if (dim == 1 && !prob.allow_harvest) continue;
            double lo = 0.0, hi;
            if (dim == 0) {
                hi = prob.a_l - x[1];
            } else if (dim == 1) {
                hi = prob.a_l - x[0];
            } else {
                hi = prob.fert_max;
            }
            if (hi <= lo) continue;
            auto slice = [&](double v) {
                auto y = x;
                y[dim] = v;
                return prob.objective(y);
            };
            const double v = golden_max(lo, hi, slice);
            const double f_new = slice(v);
            if (f_new > f_cur) {
                x[dim] = v;
                f_cur = f_new;
            }
        }
        if (f_cur - f_before <= 1e-14 * (std::abs(f_cur) + 1e-300)) break;
    }
    return x;
}

// Analytic gradient of log-utility wrt (labor_food, labor_veg, fert_kg) at a
// strictly interior point with positive budget.
std::array<double, 3> grad_log_u(const Problem& prob, const std::array<double, 3>& x) {
    const auto& hh = prob.hh;
    const double q_v = prob.allow_harvest ? harvest_production(x[1], hh) : 0.0;
    const double compost = hh.omega * q_v;
    const double phi = hh.phi;
    const double sum_phi = hh.alpha_d * std::pow(prob.land, phi) +
                           hh.alpha_l * std::pow(x[0], phi) +
                           hh.alpha_u * std::pow(x[2], phi) +
                           hh.alpha_v * (compost > 0.0 ? std::pow(compost, phi) : 0.0);
    const double q_f = hh.scale_f * std::pow(sum_phi, 1.0 / phi);
    const double budget = q_f - prob.pu * x[2];
    const double leisure = prob.a_l - x[0] - x[1];
    const double head = hh.scale_f * std::pow(sum_phi, 1.0 / phi - 1.0);

    const double f_labor = head * hh.alpha_l * std::pow(x[0], phi - 1.0);
    const double f_fert = head * hh.alpha_u * std::pow(x[2], phi - 1.0);
    double f_veg = 0.0;
    if (prob.allow_harvest && hh.alpha_v > 0.0 && hh.beta_v > 0.0) {
        f_veg = head * hh.alpha_v * std::pow(hh.omega * hh.beta_v, phi) * hh.gamma1 *
                std::pow(x[1], hh.gamma1 * phi - 1.0);
    }

    // log u = A*log(budget) + theta_l*log(leisure) + const, A = effective cash exponent.
    const double cash_exp = hh.theta_f + hh.theta_h * hh.h_f + hh.theta_g;
    return {cash_exp * f_labor / budget - hh.theta_l / leisure,
            cash_exp * f_veg / budget - hh.theta_l / leisure,
            cash_exp * (f_fert - prob.pu) / budget};
}

// Newton polish on grad log u = 0 over the strictly interior dimensions.
// Falls back to the input point whenever a step leaves the interior or fails
// to improve utility.
std::array<double, 3> newton_refine(const Problem& prob, std::array<double, 3> x) {
    const double tiny = 1e-9 * std::max(prob.a_l, 1.0);
    double f_best = prob.objective(x);
    if (!(f_best > 0.0)) return x;

    for (int iter = 0; iter < 30; ++iter) {
        std::array<int, 3> active;
        int n_active = 0;
        const double leisure = prob.a_l - x[0] - x[1];
        if (leisure <= tiny) return x;
        if (x[0] > tiny) active[n_active++] = 0;
        if (prob.allow_harvest && x[1] > tiny) active[n_active++] = 1;
        if (x[2] > 1e-12 && x[2] < prob.fert_max * (1.0 - 1e-9)) active[n_active++] = 2;
        if (n_active == 0) return x;

        const auto g0 = grad_log_u(prob, x);
        double gnorm = 0.0;
        for (int i = 0; i < n_active; ++i) gnorm = std::max(gnorm, std::abs(g0[active[i]]));
        if (gnorm < 1e-14) break;

        // Finite-difference Jacobian of the analytic gradient.
        double jac[3][3];
        for (int j = 0; j < n_active; ++j) {
            auto xp = x;
            const int dim = active[j];
            const double step = std::max(1e-7 * std::abs(x[dim]), 1e-9);
            xp[dim] += step;
            const auto gp = grad_log_u(prob, xp);
            for (int i = 0; i < n_active; ++i) jac[i][j] = (gp[active[i]] - g0[active[i]]) / step;
        }

        // Solve jac * delta = -g0 by Gaussian elimination with partial pivoting.
        double rhs[3];
        for (int i = 0; i < n_active; ++i) rhs[i] = -g0[active[i]];
        for (int col = 0; col < n_active; ++col) {
            int pivot = col;
            for (int row = col + 1; row < n_active; ++row) {
                if (std::abs(jac[row][col]) > std::abs(jac[pivot][col])) pivot = row;
            }
            if (std::abs(jac[pivot][col]) < 1e-300) return x;
            std::swap(jac[col], jac[pivot]);
            std::swap(rhs[col], rhs[pivot]);
            for (int row = col + 1; row < n_active; ++row) {
                const double m = jac[row][col] / jac[col][col];
                for (int k = col; k < n_active; ++k) jac[row][k] -= m * jac[col][k];
                rhs[row] -= m * rhs[col];
            }
        }
        double delta[3];
        for (int i = n_active - 1; i >= 0; --i) {
            double acc = rhs[i];
            for (int k = i + 1; k < n_active; ++k) acc -= jac[i][k] * delta[k];
            delta[i] = acc / jac[i][i];
        }

        // Damped step: halve until it stays interior and does not lose utility.
        double t = 1.0;
        bool moved = false;
        for (int halve = 0; halve < 20; ++halve, t *= 0.5) {
            auto cand = x;
            for (int i = 0; i < n_active; ++i) cand[active[i]] += t * delta[i];
            if (cand[0] < 0.0 || cand[1] < 0.0 || cand[2] < 0.0 ||
                cand[0] + cand[1] >= prob.a_l || cand[2] > prob.fert_max) {
                continue;
            }
            const double f_cand = prob.objective(cand);
            if (f_cand >= f_best * (1.0 - 1e-12)) {
                x = cand;
                f_best = std::max(f_best, f_cand);
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    return x;
}

std::vector<std::array<double, 3>> start_points(const Problem& prob, bool extended) {
    const double a = prob.a_l;
    auto cap = [&](double q) { return std::min(q, 0.9 * prob.fert_max); };
    std::vector<std::array<double, 3>> pts = {
        {0.70 * a, 0.004 * a, cap(1.0)},
        {0.45 * a, 0.02 * a, cap(10.0)},
        {0.90 * a, 0.001 * a, cap(0.1)},
        {0.25 * a, 0.10 * a, cap(100.0)},
        {0.60 * a, 0.0008 * a, cap(0.01)},
    };
    if (extended) {
        pts.push_back({0.55 * a, 0.05 * a, cap(500.0)});
        pts.push_back({0.80 * a, 0.01 * a, cap(50.0)});
        pts.push_back({0.35 * a, 0.005 * a, cap(5.0)});
        pts.push_back({0.95 * a, 0.0004 * a, cap(0.5)});
        pts.push_back({0.15 * a, 0.20 * a, cap(0.05)});
    }
    return pts;
}

HouseholdSolution assemble(const Problem& prob, const Prices& prices,
                           const std::array<double, 3>& x) {
    const double q_v = prob.allow_harvest ? harvest_production(x[1], prob.hh) : 0.0;
    const double q_f = food_production(x[0], prob.land, x[2], prob.hh.omega * q_v, prob.hh);
    const double budget = q_f - prob.pu * x[2];

    HouseholdSolution sol;
    sol.decision.labor_food = x[0];
    sol.decision.labor_veg = x[1];
    sol.decision.leisure = prob.a_l - x[0] - x[1];
    sol.decision.fert_kg = x[2];
    if (budget > 0.0) {
        sol.decision.c_f = prob.kappa_f * budget;
        sol.decision.c_g = (budget - sol.decision.c_f) / prob.pg;
    }
    sol.outcome.q_f = q_f;
    sol.outcome.q_v = q_v;
    sol.outcome.income = prices.p_f * q_f - prices.p_u * x[2];
    sol.outcome.health = health_status(prob.infected, prob.members - prob.infected,
                                       sol.decision.c_f, prob.hh.h_f);
    sol.outcome.utility = utility(sol.decision.c_f, sol.decision.c_g, sol.decision.leisure,
                                  sol.outcome.health, prob.hh);
    return sol;
}

} // namespace

HouseholdSolution solve_household(const HouseholdParams& params, const Prices& prices,
                                  const Endowment& endow, bool allow_harvest) {
    const Problem prob(params, prices, endow, allow_harvest);

    std::array<double, 3> best_x = {0.0, 0.0, 0.0};
    double best_f = -kInf;
    for (int attempt = 0; attempt < 2; ++attempt) {
        for (const auto& start : start_points(prob, attempt == 1)) {
            auto x = nelder_mead(prob, prob.project(start), 250);
            x = coordinate_polish(prob, x);
            x = newton_refine(prob, x);
            const double f = prob.objective(x);
            if (f > best_f) {
                best_f = f;
                best_x = x;
            }
        }
        if (std::isfinite(best_f) && best_f > 0.0) break;
        // Zero utility is only a failure if some feasible point beats it.
        const auto probe = prob.project({0.5 * prob.a_l, 0.0, std::min(1.0, prob.fert_max)});
        if (attempt == 1 && prob.objective(probe) <= best_f) break;
    }

    if (!std::isfinite(best_f)) {
        throw SolverFailedError("household solver produced a non-finite utility", best_f, kInf);
    }
    auto sol = assemble(prob, prices, best_x);
    if (sol.outcome.utility <= 0.0 && prob.objective(prob.project({0.5 * prob.a_l, 0.0, 1.0})) > 0.0) {
        double residual = kInf;
        throw SolverFailedError("household solver failed to find a positive-utility optimum",
                                sol.outcome.utility, residual);
    }
    return sol;
}

namespace {

// d q_f / d input for one CES input; +inf at a zero input with positive share.
double ces_partial(double input, double share, double sum_phi, double phi, double scale) {
    if (share == 0.0) return 0.0;
    if (input == 0.0) return kInf;
    return scale * std::pow(sum_phi, 1.0 / phi - 1.0) * share * std::pow(input, phi - 1.0);
}

} // namespace

KktReport kkt_residuals(const Decision& d, const HouseholdParams& params, const Prices& prices,
                        const Endowment& endow, bool allow_harvest) {
    params.validate();
    prices.validate();
    endow.validate();

    const double a_l = labor_availability(endow.members, endow.infected, params.tau);
    const double q_v = harvest_production(d.labor_veg, params);
    const double compost = params.omega * q_v;
    const double q_f = food_production(d.labor_food, endow.land_ha, d.fert_kg, compost, params);

    const double time_gap = std::abs(d.labor_food + d.labor_veg + d.leisure - a_l);
    if (time_gap > 1e-8 * std::max(a_l, 1.0)) {
        throw InfeasibleDecisionError("kkt_residuals: time constraint violated by " +
                                      std::to_string(time_gap) + " person-days");
    }
    const double revenue = prices.p_f * q_f;
    const double spend = prices.p_f * d.c_f + prices.p_g * d.c_g + prices.p_u * d.fert_kg;
    if (std::abs(spend - revenue) > 1e-8 * std::max(revenue, 1.0)) {
        throw InfeasibleDecisionError("kkt_residuals: cash constraint violated (spend " +
                                      std::to_string(spend) + " vs revenue " +
                                      std::to_string(revenue) + ")");
    }
    if (!(d.c_g > 0.0) || !(d.c_f > 0.0)) {
        throw InfeasibleDecisionError("kkt_residuals: needs interior consumption (c_f, c_g > 0)");
    }

    const double health = health_status(endow.infected, endow.members - endow.infected, d.c_f,
                                        params.h_f);
    const double u = utility(d.c_f, d.c_g, d.leisure, health, params);
    if (!(u > 0.0) && d.leisure > 0.0) {
        throw InfeasibleDecisionError("kkt_residuals: utility is zero at the given decision");
    }

    // Marginal utilities. The health channel adds theta_h*h_f to the food exponent.
    const double mu_cf = (params.theta_f + params.theta_h * params.h_f) * u / d.c_f;
    const double mu_cg = params.theta_g * u / d.c_g;

    KktReport rep;
    rep.shadow_price = mu_cg / prices.p_g;

    const double phi = params.phi;
    const double sum_phi = params.alpha_d * std::pow(endow.land_ha, phi) +
                           params.alpha_l * (d.labor_food > 0.0 ? std::pow(d.labor_food, phi) : 0.0) +
                           params.alpha_u * (d.fert_kg > 0.0 ? std::pow(d.fert_kg, phi) : 0.0) +
                           params.alpha_v * (compost > 0.0 ? std::pow(compost, phi) : 0.0);

    const double vmp_labor =
        prices.p_f * ces_partial(d.labor_food, params.alpha_l, sum_phi, phi, params.scale_f);
    const double vmp_fert =
        prices.p_f * ces_partial(d.fert_kg, params.alpha_u, sum_phi, phi, params.scale_f);

    // dF/dL_v through the harvest technology, as one combined power of L_v so
    // that beta_v = 0 cleanly yields zero instead of 0*inf.
    double vmp_veg = 0.0;
    if (allow_harvest && params.alpha_v > 0.0 && params.beta_v > 0.0) {
        const double coef = params.scale_f * std::pow(sum_phi, 1.0 / phi - 1.0) * params.alpha_v *
                            std::pow(params.omega * params.beta_v, phi) * params.gamma1;
        vmp_veg = d.labor_veg > 0.0
                      ? prices.p_f * coef * std::pow(d.labor_veg, params.gamma1 * phi - 1.0)
                      : kInf;
    }

    rep.leisure_at_corner = d.leisure <= 1e-9 * std::max(a_l, 1.0);
    rep.fert_at_corner = d.fert_kg <= 0.0;
    rep.veg_at_corner = d.labor_veg <= 0.0;

    if (rep.leisure_at_corner) {
        // Shadow wage from the food-labor condition; leisure uses slackness.
        rep.shadow_wage = vmp_labor;
        const double mu_cl_over_lambda =
            params.theta_l > 0.0 && d.leisure > 0.0
                ? params.theta_l * u / d.leisure / rep.shadow_price
                : 0.0;
        rep.res_leisure = rep.shadow_wage > 0.0
                              ? std::max(0.0, mu_cl_over_lambda - rep.shadow_wage) / rep.shadow_wage
                              : 0.0;
        rep.res_labor_food = 0.0;
    } else {
        const double mu_cl = params.theta_l * u / d.leisure;
        rep.shadow_wage = mu_cl / rep.shadow_price;
        rep.res_leisure = 0.0;
        rep.res_labor_food = std::abs(vmp_labor - rep.shadow_wage) / rep.shadow_wage;
    }

    rep.res_food_consumption =
        std::abs(mu_cf - rep.shadow_price * prices.p_f) / (rep.shadow_price * prices.p_f);
    rep.res_good_consumption = 0.0;

    if (!allow_harvest) {
        rep.res_labor_veg = 0.0; // externally constrained to zero
    } else if (rep.veg_at_corner) {
        rep.res_labor_veg = std::max(0.0, vmp_veg - rep.shadow_wage) / rep.shadow_wage;
    } else {
        rep.res_labor_veg = std::abs(vmp_veg - rep.shadow_wage) / rep.shadow_wage;
    }

    const double fert_bound = params.fert_max_per_ha * endow.land_ha;
    if (rep.fert_at_corner) {
        rep.res_fertilizer = std::max(0.0, vmp_fert - prices.p_u) / prices.p_u;
    } else if (d.fert_kg >= fert_bound * (1.0 - 1e-9)) {
        rep.res_fertilizer = std::max(0.0, prices.p_u - vmp_fert) / prices.p_u;
    } else {
        rep.res_fertilizer = std::abs(vmp_fert - prices.p_u) / prices.p_u;
    }

    rep.max_residual = std::max({rep.res_food_consumption, rep.res_good_consumption,
                                 rep.res_leisure, rep.res_labor_food, rep.res_labor_veg,
                                 rep.res_fertilizer});
    return rep;
}

} // namespace bioecon
