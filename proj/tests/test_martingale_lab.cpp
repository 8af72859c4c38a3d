#include <cmath>

#include "doctest.h"
#include "hsle/martingale_lab.hpp"

using namespace hsle;

TEST_SUITE("martingale_lab") {
    TEST_CASE("M_0 against mpmath") {
        CHECK(martingale_M0(Params::make(3.0, 0.0), 1.0, 2.0) == doctest::Approx(0.57038617164977143918).epsilon(1e-12));
    }

    TEST_CASE("kappa=4 terminal endpoint, small run") {
        CrossingConfig c;
        c.mc.n_paths = 400;
        c.mc.dt = 1e-3;
        c.mc.seed = 17;
        const ExperimentResult r = terminal_endpoint_kappa4(-4.0, {0, 1, 2, 3}, c);
        CHECK(r.target == doctest::Approx(0.25));
        CHECK(std::fabs(r.estimate.mean - r.target) < 4 * r.estimate.se + 0.02);
        c.mc.workers = 2;
        CHECK(terminal_endpoint_kappa4(-4.0, {0, 1, 2, 3}, c).estimate.mean == r.estimate.mean);
    }

    TEST_CASE("avoid probability is one above the threshold") {
        AvoidConfig c;
        c.mc.n_paths = 100;
        c.mc.dt = 1e-3;
        const ExperimentResult r = avoid_probability_mc(Params::make(6.0, 0.0), {0, 1, 2, 3}, c);
        CHECK(r.target == 1.0);
        CHECK(r.estimate.mean >= 0.9);
    }
}
