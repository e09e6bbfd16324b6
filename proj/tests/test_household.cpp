#include <doctest.h>

#include <cmath>

#include "bioecon/errors.hpp"
#include "bioecon/household_types.hpp"
#include "bioecon/rng.hpp"

using namespace bioecon;

TEST_CASE("harvest production follows the estimated power law") {
    const HouseholdParams p = HouseholdParams::baseline();
    CHECK(harvest_production(0.0, p) == 0.0);
    CHECK(harvest_production(1.0, p) == doctest::Approx(14.4942).epsilon(1e-12));
    CHECK(harvest_production(365.0, p) == doctest::Approx(67.00531419975542).epsilon(1e-9));
}

TEST_CASE("food production at unit inputs equals the scale") {
    HouseholdParams p = HouseholdParams::baseline();
    p.scale_f = 1.0;
    CHECK(food_production(1.0, 1.0, 1.0, 1.0, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(food_production(0.0, 0.0, 0.0, 0.0, p) == 0.0);
}

TEST_CASE("food production is homogeneous of degree one") {
    CounterRng rng(31, 0);
    HouseholdParams p = HouseholdParams::baseline();
    for (int i = 0; i < 50; ++i) {
        const double labor = rng.next_double() * 3000.0;
        const double land = rng.next_double() * 6.0;
        const double fert = rng.next_double() * 100.0;
        const double compost = rng.next_double() * 50.0;
        const double lambda = 0.25 + rng.next_double() * 4.0;
        const double base = food_production(labor, land, fert, compost, p);
        const double scaled =
            food_production(lambda * labor, lambda * land, lambda * fert, lambda * compost, p);
        CHECK(scaled == doctest::Approx(lambda * base).epsilon(1e-10));
    }
}

TEST_CASE("zero inputs drop out of the CES sum") {
    HouseholdParams p = HouseholdParams::baseline();
    p.scale_f = 1.0;
    const double without = food_production(100.0, 2.0, 0.0, 0.0, p);
    CHECK(without > 0.0);
    CHECK(std::isfinite(without));
}

TEST_CASE("health status") {
    CHECK(health_status(0, 10, 1.0, 0.000384) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    CHECK(health_status(10, 0, 1.0, 0.000384) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(health_status(2, 8, 100.0, 0.000384) ==
          doctest::Approx(2.2294800243625916).epsilon(1e-12));
    CHECK(health_status(3, 7, 0.0, 0.000384) == 0.0);
    CHECK_THROWS_AS(health_status(0, 0, 1.0, 0.000384), InvalidStateError);
}

TEST_CASE("Cobb-Douglas utility") {
    const HouseholdParams p = HouseholdParams::baseline();
    CHECK(utility(1.0, 1.0, 1.0, 1.0, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(utility(0.0, 1.0, 1.0, 1.0, p) == 0.0);
    CHECK(utility(1.0, 1.0, 0.0, 1.0, p) == 0.0);
    CHECK(utility(2.0, 1.0, 1.0, 1.0, p) ==
          doctest::Approx(1.4640856959456254).epsilon(1e-12));
}

TEST_CASE("a zero utility exponent makes its factor drop out") {
    HouseholdParams p = HouseholdParams::baseline();
    p.theta_l = 0.0;
    p.theta_f = 0.6; // keep the sum at one
    CHECK(utility(1.0, 1.0, 0.0, 1.0, p) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("labor availability") {
    CHECK(labor_availability(10, 0, 0.5) == doctest::Approx(3650.0));
    CHECK(labor_availability(10, 10, 0.8) == doctest::Approx(2920.0));
    CHECK(labor_availability(10, 4, 0.0) == doctest::Approx(2190.0));
    CHECK_THROWS_AS(labor_availability(10, 11, 0.5), InvalidStateError);
}

TEST_CASE("parameter validation catches broken exponent sums") {
    HouseholdParams p = HouseholdParams::baseline();
    p.theta_f = 0.7; // sum now 1.15
    CHECK_THROWS_AS(p.validate(), InvalidStateError);

    HouseholdParams q = HouseholdParams::baseline();
    q.alpha_u = 0.2; // shares now 1.15
    CHECK_THROWS_AS(q.validate(), InvalidStateError);

    HouseholdParams r = HouseholdParams::baseline();
    r.tau = 1.0;
    CHECK_THROWS_AS(r.validate(), InvalidStateError);
}
