#include <cmath>

#include "doctest.h"
#include "hsle/error.hpp"
#include "hsle/special_fn.hpp"

using namespace hsle;

// reference values from mpmath at 30 digits
TEST_SUITE("special_fn") {
    TEST_CASE("2F1 against mpmath") {
        CHECK(hyp2f1({4.0 / 3, -1.0 / 3, 8.0 / 3}, 0.3) == doctest::Approx(0.94636878402176561052).epsilon(1e-13));
        CHECK(hyp2f1({4.0 / 3, -1.0 / 3, 8.0 / 3}, 0.95) == doctest::Approx(0.78171241086013950175).epsilon(1e-12));
        CHECK(hyp2f1({2.0 / 3, 1.0 / 3, 4.0 / 3}, 0.999) == doctest::Approx(1.6671779870179856972).epsilon(1e-11));
        CHECK(hyp2f1({0.5, 0.25, 1.5}, 0.9) == doctest::Approx(1.1351719463945767467).epsilon(1e-12));
        CHECK(hyp2f1({2, 3, 5.5}, 0.7) == doctest::Approx(3.069693444561881217).epsilon(1e-12));
    }

    TEST_CASE("2F1 at 1 and Gamma") {
        CHECK(hyp2f1_at_one({4.0 / 3, -1.0 / 3, 8.0 / 3}) == doctest::Approx(0.76051489553302858557).epsilon(1e-13));
        CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
        CHECK(gamma_fn(-1.5) == doctest::Approx(2.3632718012073547031).epsilon(1e-13));
        CHECK(log_gamma(100.5) == doctest::Approx(361.43554046777762156).epsilon(1e-14));
        CHECK(rgamma(0.0) == 0.0);
        CHECK(rgamma(-3.0) == 0.0);
    }

    TEST_CASE("2F1 rejects bad arguments") {
        CHECK_THROWS_AS(hyp2f1({1, 1, -2}, 0.5), Error);
        CHECK_THROWS_AS(hyp2f1({1, 1, 2}, 1.5), Error);
        CHECK_THROWS_AS(hyp2f1_at_one({1, 1, 1.5}), Error);
    }

    TEST_CASE("Params") {
        const Params p = Params::make(3.0, 0.0);
        CHECK(p.h == doctest::Approx(0.5));
        CHECK(p.a == doctest::Approx(2.0 / 3));
        CHECK(p.b == doctest::Approx(0.5));
        CHECK_FALSE(p.low_nu);
        CHECK(Params::make(6.0, -3.5).low_nu);
        CHECK(Params::make(2.0, 0.0).nu_floor() == -4.0);
        CHECK(Params::make(7.0, 0.0).nu_floor() == -2.5);
        CHECK_THROWS_AS(Params::make(8.0, 0.0), Error);
        CHECK_THROWS_AS(Params::make(3.0, NAN), Error);
    }

    TEST_CASE("F and F' in both regimes") {
        const Params hi = Params::make(3.0, 0.0);
        CHECK(F_hsle(hi, 0.3) == doctest::Approx(0.94636878402176561052).epsilon(1e-13));
        CHECK(F_prime(hi, 0.3) == doctest::Approx(-0.192660868609266346).epsilon(1e-11));
        CHECK(F_hsle(Params::make(6.0, 1.0), 0.6) == doctest::Approx(1.180966467793216521).epsilon(1e-12));
        const Params lo = Params::make(6.0, -3.5);
        CHECK(F_hsle(lo, 0.4) == doctest::Approx(0.7901475385065936264).epsilon(1e-12));
        CHECK(F_prime(lo, 0.4) == doctest::Approx(-0.32158113151032961277).epsilon(1e-10));
        CHECK(F_hsle(lo, 1.0) == 0.0);
        CHECK(F_hsle(hi, 0.0) == 1.0);
        CHECK(F_prime(Params::make(4.0, 1.0), 0.5) == 0.0);
    }

    TEST_CASE("Euler ODE residual is small") {
        for (double k : {2.0, 3.0, 6.0}) {
            CHECK(std::fabs(euler_ode_residual(Params::make(k, 0.5), 0.4, 1e-3)) < 1e-5);
        }
    }
}
