#include <cmath>
#include <random>

#include "doctest.h"
#include "hsle/error.hpp"
#include "hsle/geometry.hpp"

using namespace hsle;

TEST_SUITE("geometry") {
    TEST_CASE("cross ratio") {
        CHECK(cross_ratio(0, 1, 2, 3) == doctest::Approx(0.25));
        CHECK(cross_ratio(0, 1, 2, kInfinity) == doctest::Approx(0.5));
        CHECK_THROWS_AS(cross_ratio(0, 2, 1, 3), Error);
    }

    TEST_CASE("cross ratio is Mobius invariant") {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 50; ++i) {
            const MobiusMap m = MobiusMap::random(rng, 0.0, 3.0);
            CHECK(m.det() > 0);
            CHECK(cross_ratio(m(0), m(1), m(2), m(3)) == doctest::Approx(0.25).epsilon(1e-10));
        }
    }

    TEST_CASE("inverse and compose") {
        const MobiusMap m{2, 1, 1, 3};
        const MobiusMap id = m.compose(m.inverse());
        for (double x : {-1.0, 0.0, 0.5, 7.0}) {
            CHECK(id(x) == doctest::Approx(x));
            CHECK(m.derivative(x) == doctest::Approx(m.det() / ((x + 3) * (x + 3))));
        }
    }

    TEST_CASE("normalize to the half-plane") {
        const Normalized n = normalize_to_halfplane({0.5, 1.5, 2.0, 4.0}, 0, 1, 3);
        CHECK(n.points[0] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(n.points[1] == doctest::Approx(1.0));
        CHECK(std::isinf(n.points[3]));
    }

    TEST_CASE("Poisson kernel") {
        CHECK(poisson_kernel_halfplane(0.0, 2.0) == doctest::Approx(0.25));
        CHECK(poisson_kernel_halfplane(1.0, 3.0) == doctest::Approx(0.25));
    }
}
