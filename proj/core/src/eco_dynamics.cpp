#include "bioecon/eco_dynamics.hpp"

#include <cmath>
#include <string>

#include "bioecon/errors.hpp"

namespace bioecon {

EcoState EcoState::baseline() {
    // Stationary point of the baseline parameters: P = lambda2*I2/mu4 and
    // M = k*lambda1*I1/mu3 both hold exactly at these values.
    EcoState s;
    s.n_veg = 28906.5;
    s.s_snails = 12300.0;
    s.i_snails = 200.0;
    s.miracidia = 15000.0;
    s.cercariae = 130000.0;
    s.s_humans = 7.5;
    s.i_humans = 2.5;
    return s;
}

void EcoState::validate(std::string_view context) const {
    const auto values = to_array();
    for (int i = 0; i < 7; ++i) {
        if (!std::isfinite(values[i]) || values[i] < 0.0) {
            throw InvalidStateError("invalid ecological state: field '" +
                                    std::string(kEcoFieldNames[i]) + "' = " +
                                    std::to_string(values[i]) + " (" + std::string(context) + ")");
        }
    }
}

void EcoParams::validate() const {
    const struct {
        const char* name;
        double value;
    } fields[] = {
        {"r", r}, {"cap_k", cap_k}, {"rho", rho}, {"n0", n0}, {"lambda_cap2", lambda_cap2},
        {"beta1", beta1}, {"beta2", beta2}, {"mu2", mu2}, {"mu3", mu3}, {"mu4", mu4},
        {"delta2", delta2}, {"lambda1", lambda1}, {"lambda2", lambda2}, {"alpha1", alpha1},
        {"m0", m0}, {"epsilon", epsilon}, {"chi", chi}, {"k_eggs", k_eggs}, {"eta", eta},
    };
    for (const auto& f : fields) {
        if (!std::isfinite(f.value) || f.value < 0.0) {
            throw InvalidStateError(std::string("invalid ecology parameter: ") + f.name + " = " +
                                    std::to_string(f.value));
        }
    }
    if (cap_k <= 0.0) throw InvalidStateError("invalid ecology parameter: cap_k must be > 0");
    if (beta2 > 1.0) throw InvalidStateError("invalid ecology parameter: beta2 must be in [0,1]");
}

EcoDerivative eco_rhs(const EcoState& state, const EcoParams& params, double daily_harvest) {
    state.validate("eco_rhs input");
    if (!std::isfinite(daily_harvest) || daily_harvest < 0.0) {
        throw InvalidStateError("eco_rhs: daily_harvest must be finite and >= 0");
    }

    const double n = state.n_veg;
    const double s2 = state.s_snails;
    const double i2 = state.i_snails;
    const double m = state.miracidia;
    const double p = state.cercariae;
    const double s1 = state.s_humans;
    const double i1 = state.i_humans;

    // Saturating miracidia -> snail infection flow.
    const double snail_denom = params.m0 + params.epsilon * m * m;
    const double snail_infection =
        snail_denom > 0.0 ? params.beta2 * m * s2 / snail_denom : 0.0;

    // Habitat loss: each kg of vegetation deficit below K raises snail mortality.
    const double habitat_mortality = params.chi * std::max(0.0, params.cap_k - n);

    // Saturating cercariae -> human infection flow.
    const double human_infection = params.beta1 * p * s1 / (1.0 + params.alpha1 * p);

    EcoDerivative d;
    d.dn_veg = params.r * n * (1.0 - n / params.cap_k) + params.n0 - daily_harvest;
    d.ds_snails = params.lambda_cap2 - snail_infection - (params.mu2 + habitat_mortality) * s2;
    d.di_snails = snail_infection - (params.mu2 + params.delta2 + habitat_mortality) * i2;
    d.dmiracidia = params.k_eggs * params.lambda1 * i1 - params.mu3 * m;
    d.dcercariae = params.lambda2 * i2 - params.mu4 * p;
    d.ds_humans = params.eta * i1 - human_infection;
    d.di_humans = -d.ds_humans; // conserves the human total exactly
    return d;
}

namespace {

std::array<double, 7> rhs_array(const std::array<double, 7>& y, const EcoParams& params,
                                double daily_harvest) {
    // Intermediate stages may poke slightly below zero; the RHS is a smooth
    // rational function, so evaluate it as-is rather than re-validating.
    EcoState s = EcoState::from_array(y);
    const double n = s.n_veg;
    const double snail_denom = params.m0 + params.epsilon * s.miracidia * s.miracidia;
    const double snail_infection =
        snail_denom > 0.0 ? params.beta2 * s.miracidia * s.s_snails / snail_denom : 0.0;
    const double habitat_mortality = params.chi * std::max(0.0, params.cap_k - n);
    const double human_infection =
        params.beta1 * s.cercariae * s.s_humans / (1.0 + params.alpha1 * s.cercariae);

    std::array<double, 7> d;
    d[0] = params.r * n * (1.0 - n / params.cap_k) + params.n0 - daily_harvest;
    d[1] = params.lambda_cap2 - snail_infection - (params.mu2 + habitat_mortality) * s.s_snails;
    d[2] = snail_infection - (params.mu2 + params.delta2 + habitat_mortality) * s.i_snails;
    d[3] = params.k_eggs * params.lambda1 * s.i_humans - params.mu3 * s.miracidia;
    d[4] = params.lambda2 * s.i_snails - params.mu4 * s.cercariae;
    d[5] = params.eta * s.i_humans - human_infection;
    d[6] = -d[5];
    return d;
}

} // namespace

namespace detail {

// One RK4 step; shared by integrate_period and steady_state_run.
void rk4_step(std::array<double, 7>& y, const EcoParams& params, double daily_harvest, double h,
              long step_index, ClampStats& clamps, const char* context) {
    const auto k1 = rhs_array(y, params, daily_harvest);
    std::array<double, 7> y2;
    for (int i = 0; i < 7; ++i) y2[i] = y[i] + 0.5 * h * k1[i];
    const auto k2 = rhs_array(y2, params, daily_harvest);
    std::array<double, 7> y3;
    for (int i = 0; i < 7; ++i) y3[i] = y[i] + 0.5 * h * k2[i];
    const auto k3 = rhs_array(y3, params, daily_harvest);
    std::array<double, 7> y4;
    for (int i = 0; i < 7; ++i) y4[i] = y[i] + h * k3[i];
    const auto k4 = rhs_array(y4, params, daily_harvest);

    for (int i = 0; i < 7; ++i) {
        y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!std::isfinite(y[i])) {
            throw IntegrationDivergedError(std::string(kEcoFieldNames[i]), step_index, context);
        }
        if (y[i] < 0.0) {
            y[i] = 0.0;
            ++clamps.per_field[i];
        }
    }
}

long step_count(double days, double dt) {
    if (!(dt > 0.0)) throw InvalidStateError("integrate_period: dt must be > 0");
    if (!(days > 0.0)) throw InvalidStateError("integrate_period: days must be > 0");
    const double ratio = days / dt;
    const long n = std::lround(ratio);
    if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio + 1e-12) {
        throw InvalidStateError("integrate_period: days/dt must be integral (days=" +
                                std::to_string(days) + ", dt=" + std::to_string(dt) + ")");
    }
    return n;
}

} // namespace detail

IntegrationResult integrate_period(const EcoState& state, const EcoParams& params,
                                   double annual_harvest, double days, double dt) {
    state.validate("integrate_period input");
    params.validate();
    if (!std::isfinite(annual_harvest) || annual_harvest < 0.0) {
        throw InvalidStateError("integrate_period: annual_harvest must be finite and >= 0");
    }

    const long n_steps = detail::step_count(days, dt);
    const double h = days / static_cast<double>(n_steps);
    const double daily_harvest = annual_harvest / 365.0;

    IntegrationResult result;
    auto y = state.to_array();
    for (long step = 0; step < n_steps; ++step) {
        detail::rk4_step(y, params, daily_harvest, h, step, result.clamps, "integrate_period");
    }
    result.state = EcoState::from_array(y);
    return result;
}

EcoState apply_runoff(const EcoState& state, double rho, double fert_kg) {
    if (!std::isfinite(fert_kg) || fert_kg < 0.0) {
        throw InvalidStateError("apply_runoff: fert_kg must be finite and >= 0");
    }
    if (!std::isfinite(rho) || rho < 0.0) {
        throw InvalidStateError("apply_runoff: rho must be finite and >= 0");
    }
    EcoState out = state;
    out.n_veg = state.n_veg * (1.0 + rho * fert_kg);
    return out;
}

SteadyStateReport steady_state_run(const EcoParams& params, const EcoState& state0, int years,
                                   double dt) {
    state0.validate("steady_state_run input");
    params.validate();
    if (years < 1) throw InvalidStateError("steady_state_run: years must be >= 1");

    const double total_days = 365.0 * years;
    const long n_steps = detail::step_count(total_days, dt);
    const double h = total_days / static_cast<double>(n_steps);

    SteadyStateReport report;
    auto y = state0.to_array();
    report.sample_days.push_back(0.0);
    report.samples.push_back(state0);

    std::array<double, 7> year_before_last = y;
    double next_sample = 30.0;
    for (long step = 0; step < n_steps; ++step) {
        detail::rk4_step(y, params, 0.0, h, step, report.clamps, "steady_state_run");
        const double t = h * static_cast<double>(step + 1);
        const bool year_mark = std::fmod(t, 365.0) < 0.5 * h || 365.0 - std::fmod(t, 365.0) <= 0.5 * h;
        if (t >= next_sample - 0.5 * h || year_mark || step == n_steps - 1) {
            report.sample_days.push_back(t);
            report.samples.push_back(EcoState::from_array(y));
            while (next_sample <= t + 0.5 * h) next_sample += 30.0;
        }
        if (std::abs(t - (total_days - 365.0)) <= 0.5 * h) year_before_last = y;
    }

    const EcoState final_state = EcoState::from_array(y);
    bool drift_ok = true;
    for (int i = 0; i < 7; ++i) {
        const double prev = year_before_last[i];
        const double change = std::abs(y[i] - prev);
        report.final_year_drift[i] = std::abs(prev) > 1e-12 ? change / std::abs(prev) : change;
        if (report.final_year_drift[i] >= 0.01) drift_ok = false;
    }
    report.final_prevalence = final_state.prevalence();
    report.steady = drift_ok && report.final_prevalence >= 0.22 && report.final_prevalence <= 0.28;
    return report;
}

} // namespace bioecon
