#include <doctest.h>

#include <cmath>

#include "bioecon/eco_dynamics.hpp"
#include "bioecon/errors.hpp"
#include "bioecon/rng.hpp"

using namespace bioecon;

namespace {

// The starting populations exactly as tabulated (infected snails dominant),
// used where a test pins arithmetic to those numbers.
EcoState tabulated_start() {
    EcoState s;
    s.n_veg = 28906.5;
    s.s_snails = 200.0;
    s.i_snails = 12300.0;
    s.miracidia = 15000.0;
    s.cercariae = 130000.0;
    s.s_humans = 7.5;
    s.i_humans = 2.5;
    return s;
}

EcoParams tabulated_params() {
    EcoParams p;
    p.eta = 0.00068; // the tabulated treatment rate
    return p;
}

} // namespace

TEST_CASE("eco_rhs at the tabulated starting point") {
    const EcoState s = tabulated_start();
    const EcoParams p = tabulated_params();
    const EcoDerivative d = eco_rhs(s, p, 0.0);

    // logistic term vanishes at carrying capacity, leaving recolonization
    CHECK(d.dn_veg == doctest::Approx(0.01).epsilon(1e-12));
    // egg input and miracidial mortality balance exactly: 300*50*2.5 = 2.5*15000
    CHECK(d.dmiracidia == 0.0);
    // 2.6*12300 - 0.004*130000
    CHECK(d.dcercariae == doctest::Approx(31460.0).epsilon(1e-12));
    CHECK(d.ds_humans == doctest::Approx(-0.015500611364181252).epsilon(1e-9));
    CHECK(d.di_humans == doctest::Approx(0.015500611364181252).epsilon(1e-9));
}

TEST_CASE("eco_rhs conserves the human total exactly") {
    CounterRng rng(99, 0);
    for (int i = 0; i < 200; ++i) {
        EcoState s;
        s.n_veg = rng.next_double() * 40000.0;
        s.s_snails = rng.next_double() * 20000.0;
        s.i_snails = rng.next_double() * 20000.0;
        s.miracidia = rng.next_double() * 1e6;
        s.cercariae = rng.next_double() * 1e6;
        s.s_humans = rng.next_double() * 10.0;
        s.i_humans = rng.next_double() * 10.0;
        EcoParams p;
        p.eta = rng.next_double() * 0.1;
        p.beta1 = rng.next_double() * 1e-7;
        const EcoDerivative d = eco_rhs(s, p, rng.next_double());
        CHECK(d.ds_humans + d.di_humans == 0.0);
    }
}

TEST_CASE("eco_rhs rejects non-finite and negative states") {
    EcoState s = EcoState::baseline();
    s.miracidia = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eco_rhs(s, EcoParams::baseline(), 0.0), InvalidStateError);
    s = EcoState::baseline();
    s.s_snails = -1.0;
    CHECK_THROWS_AS(eco_rhs(s, EcoParams::baseline(), 0.0), InvalidStateError);
    CHECK_THROWS_AS(eco_rhs(EcoState::baseline(), EcoParams::baseline(), -1.0),
                    InvalidStateError);
}

TEST_CASE("snail mortality rises strictly as vegetation falls below capacity") {
    const EcoParams p = EcoParams::baseline();
    EcoState s = EcoState::baseline();
    s.miracidia = 0.0; // isolates the mortality term in dS2
    double prev = -1e300;
    for (double n : {0.0, 5000.0, 15000.0, 25000.0, 28906.5}) {
        s.n_veg = n;
        const EcoDerivative d = eco_rhs(s, p, 0.0);
        CHECK(d.ds_snails > prev); // mortality falls => dS2 rises
        prev = d.ds_snails;
    }
}

TEST_CASE("integrate_period: constant withdrawal integrates exactly") {
    EcoParams p;
    p.r = 0.0;
    p.n0 = 0.0;
    p.rho = 0.0;
    p.lambda_cap2 = 0.0;
    p.beta1 = 0.0;
    p.beta2 = 0.0;
    p.mu2 = 0.0;
    p.mu3 = 0.0;
    p.mu4 = 0.0;
    p.delta2 = 0.0;
    p.lambda1 = 0.0;
    p.lambda2 = 0.0;
    p.chi = 0.0;
    p.k_eggs = 0.0;
    p.eta = 0.0;
    EcoState s = EcoState::baseline();
    const auto res = integrate_period(s, p, 365.0, 365.0, 0.1);
    CHECK(res.state.n_veg == doctest::Approx(s.n_veg - 365.0).epsilon(1e-12));
    CHECK(res.state.s_snails == s.s_snails);
}

TEST_CASE("integrate_period: pure exponential decay of cercariae") {
    EcoParams p = EcoParams::baseline();
    p.lambda2 = 0.0;
    EcoState s = EcoState::baseline();
    const auto res = integrate_period(s, p, 0.0, 365.0, 0.1);
    // 130000 * exp(-0.004*365)
    CHECK(res.state.cercariae ==
          doctest::Approx(30190.71571486865).epsilon(1e-3));
}

TEST_CASE("integrate_period validates the step grid") {
    CHECK_THROWS_AS(integrate_period(EcoState::baseline(), EcoParams::baseline(), 0.0, 365.0, 0.3),
                    InvalidStateError);
    CHECK_THROWS_AS(integrate_period(EcoState::baseline(), EcoParams::baseline(), 0.0, 365.0, 0.0),
                    InvalidStateError);
}

TEST_CASE("integrate_period clamps an exhausted vegetation stock at zero") {
    EcoParams p = EcoParams::baseline();
    EcoState s = EcoState::baseline();
    const auto res = integrate_period(s, p, 40.0 * 365.0 * 1000.0, 365.0, 0.1);
    CHECK(res.state.n_veg == 0.0);
    CHECK(res.clamps.per_field[0] > 0);
    for (double v : res.state.to_array()) CHECK(v >= 0.0);
}

TEST_CASE("integrate_period never returns a negative field") {
    CounterRng rng(7, 1);
    for (int i = 0; i < 25; ++i) {
        EcoState s;
        s.n_veg = rng.next_double() * 30000.0;
        s.s_snails = rng.next_double() * 15000.0;
        s.i_snails = rng.next_double() * 1000.0;
        s.miracidia = rng.next_double() * 50000.0;
        s.cercariae = rng.next_double() * 200000.0;
        s.s_humans = rng.next_double() * 10.0;
        s.i_humans = 10.0 - s.s_humans;
        const double harvest = rng.next_double() * 5000.0;
        const auto res = integrate_period(s, EcoParams::baseline(), harvest, 365.0, 0.25);
        for (double v : res.state.to_array()) CHECK(v >= 0.0);
    }
}

TEST_CASE("human total is conserved through 20 integrated years") {
    EcoParams p = EcoParams::baseline();
    EcoState s = EcoState::baseline();
    const double total0 = s.s_humans + s.i_humans;
    for (int year = 0; year < 20; ++year) {
        s = apply_runoff(s, p.rho, 15.0);
        s = integrate_period(s, p, 30.0, 365.0, 0.1).state;
    }
    CHECK(std::abs(s.s_humans + s.i_humans - total0) <= 1e-9 * total0);
}

TEST_CASE("fourth-order convergence on a 30-day window") {
    const EcoParams p = tabulated_params();
    const EcoState s0 = tabulated_start(); // far from equilibrium, so errors are visible

    auto run = [&](double dt) { return integrate_period(s0, p, 0.0, 30.0, dt).state.to_array(); };
    const auto ref = run(0.5 / 64.0);
    const auto coarse = run(0.5);
    const auto fine = run(0.25);

    double err_coarse = 0.0, err_fine = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double scale = std::max(std::abs(ref[i]), 1.0);
        err_coarse = std::max(err_coarse, std::abs(coarse[i] - ref[i]) / scale);
        err_fine = std::max(err_fine, std::abs(fine[i] - ref[i]) / scale);
    }
    const double ratio = err_coarse / err_fine;
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("apply_runoff scales vegetation only") {
    EcoState s = EcoState::baseline();

    SUBCASE("zero coefficient") {
        const EcoState out = apply_runoff(s, 0.0, 123.0);
        CHECK(out.n_veg == s.n_veg);
    }
    SUBCASE("zero fertilizer") {
        const EcoState out = apply_runoff(s, 0.01, 0.0);
        CHECK(out.n_veg == s.n_veg);
    }
    SUBCASE("tabulated shock") {
        s.n_veg = 28906.5;
        const EcoState out = apply_runoff(s, 0.01, 10.0);
        CHECK(out.n_veg == doctest::Approx(31797.15).epsilon(1e-12));
        CHECK(out.s_snails == s.s_snails);
        CHECK(out.cercariae == s.cercariae);
        CHECK(out.i_humans == s.i_humans);
    }
    SUBCASE("negative fertilizer rejected") {
        CHECK_THROWS_AS(apply_runoff(s, 0.01, -1.0), InvalidStateError);
    }
}

TEST_CASE("vegetation stays in the recolonization band with no harvest or runoff") {
    EcoParams p = EcoParams::baseline();
    EcoState s = EcoState::baseline();
    const int years = 3;
    double max_seen = 0.0;
    for (int y = 0; y < years; ++y) {
        s = integrate_period(s, p, 0.0, 365.0, 0.1).state;
        max_seen = std::max(max_seen, s.n_veg);
        CHECK(s.n_veg >= p.cap_k);
    }
    CHECK(max_seen <= p.cap_k + p.n0 * 365.0 * years);
}

TEST_CASE("steady_state_run settles near 25% prevalence on the defaults") {
    const auto report = steady_state_run(EcoParams::baseline(), EcoState::baseline(), 5, 0.1);
    CHECK(report.steady);
    CHECK(report.final_prevalence == doctest::Approx(0.25).epsilon(0.05));
    for (double drift : report.final_year_drift) CHECK(drift < 0.01);
    // at least monthly sampling over five years
    CHECK(report.samples.size() >= 60);
    CHECK(report.sample_days.front() == 0.0);
    CHECK(report.sample_days.back() == doctest::Approx(5 * 365.0));
}

TEST_CASE("a hundredfold treatment rate suppresses infection") {
    EcoParams p = EcoParams::baseline();
    p.eta *= 100.0;
    const auto report = steady_state_run(p, EcoState::baseline(), 5, 0.1);
    CHECK((!report.steady || report.final_prevalence < 0.22));
    CHECK(report.final_prevalence < 0.22);
}

TEST_CASE("snails relax to recruitment over mortality with everything else empty") {
    EcoParams p = EcoParams::baseline();
    EcoState s;
    s.n_veg = p.cap_k; // full habitat, so no deficit mortality
    const auto res = integrate_period(s, p, 0.0, 3 * 365.0, 0.1);
    CHECK(res.state.s_snails == doctest::Approx(p.lambda_cap2 / p.mu2).epsilon(1e-3));
    CHECK(res.state.i_snails == 0.0);
    CHECK(res.state.miracidia == 0.0);
    CHECK(res.state.cercariae == 0.0);
}

TEST_CASE("integration divergence names the field") {
    EcoParams p = EcoParams::baseline();
    p.lambda1 = 1e300; // blows up the miracidia inflow
    p.k_eggs = 1e300;
    try {
        integrate_period(EcoState::baseline(), p, 0.0, 365.0, 0.1);
        FAIL("expected divergence");
    } catch (const IntegrationDivergedError& e) {
        CHECK(e.field_name == "miracidia");
        CHECK(e.step_index >= 0);
    }
}
