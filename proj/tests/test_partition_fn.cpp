#include <cmath>

#include "doctest.h"
#include "hsle/error.hpp"
#include "hsle/partition_fn.hpp"

using namespace hsle;

namespace {
const LinkPattern kNested = LinkPattern::parse("1-4,2-3");
const LinkPattern kAdjacent = LinkPattern::parse("1-2,3-4");
}  // namespace

// reference values from mpmath at 30 digits
TEST_SUITE("partition_fn") {
    TEST_CASE("N=2 closed forms, kappa=3") {
        const Params p = Params::make(3.0, 0.0);
        CHECK(pure_Z(p, kNested, {0, 1, 2, 3}) == doctest::Approx(0.16626364487582942244).epsilon(1e-12));
        CHECK(pure_Z(p, kAdjacent, {0, 1, 2, 3}) == doctest::Approx(0.9170696884575039109).epsilon(1e-12));
        CHECK(pure_Z(p, kNested, {0, 0.5, 2, 4}) == doctest::Approx(0.058416580847419354598).epsilon(1e-12));
        CHECK(pure_Z(p, kAdjacent, {0, 0.5, 2, 4}) == doctest::Approx(0.96539294296210445493).epsilon(1e-12));
    }

    TEST_CASE("kappa=4 square-root forms") {
        const Params p = Params::make(4.0, 0.0);
        CHECK(pure_Z(p, kAdjacent, {0, 1, 2.5, 4}) == doctest::Approx(0.73029674334022148461).epsilon(1e-12));
        CHECK(pure_Z(p, kNested, {0, 1, 2.5, 4}) == doctest::Approx(0.18257418583505537115).epsilon(1e-12));
    }

    TEST_CASE("log-gap form agrees with positions") {
        for (double k : {2.0, 3.0, 4.0, 6.0}) {
            const Params p = Params::make(k, 0.0);
            for (const auto& lp : {kNested, kAdjacent}) {
                const std::vector<double> xs{0.2, 0.9, 1.1, 3.0};
                std::vector<double> lg;
                for (int i = 0; i < 3; ++i) lg.push_back(std::log(xs[i + 1] - xs[i]));
                CHECK(std::exp(log_pure_Z_gaps(p, lp, lg)) == doctest::Approx(pure_Z(p, lp, xs)).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("Z_kappa_nu and the avoid probability") {
        CHECK(z_kappa_nu(Params::make(3.0, 0.0), 0, 1, 2, 3) == doctest::Approx(0.1264459785136819767).epsilon(1e-12));
        CHECK(z_kappa_nu(Params::make(6.0, -3.5), 0, 1, 3, 4) == doctest::Approx(1.0875026941180964362).epsilon(1e-11));
        CHECK(avoid_probability(Params::make(6.0, -2.0), 0, 1, 2, 3) ==
              doctest::Approx(0.37354879133423045443).epsilon(1e-11));
        CHECK(avoid_probability(Params::make(6.0, 0.0), 0, 1, 2, 3) == 1.0);
    }

    TEST_CASE("bound and ordering") {
        const Params p = Params::make(3.0, 0.0);
        const std::vector<double> xs{0, 1, 2, 3};
        CHECK(pure_Z(p, kNested, xs) <= bound_B_alpha(p, kNested, xs));
        CHECK(pure_Z(p, kAdjacent, xs) <= bound_B_alpha(p, kAdjacent, xs));
        CHECK(pure_Z_N1(p, 0, 4) == doctest::Approx(0.25));
        CHECK_THROWS_AS(pure_Z_N1(p, 1, 0), Error);
        CHECK_THROWS_AS(pure_Z(p, kNested, {0, 2, 1, 3}), Error);
    }

    TEST_CASE("PDE residual vanishes in the step limit") {
        const Params p = Params::make(3.0, 0.0);
        const ZFun Z = [&](const std::vector<double>& x) { return pure_Z(p, kNested, x); };
        for (int i = 0; i < 4; ++i)
            CHECK(std::fabs(pde_residual_extrapolated(Z, 3.0, {p.h, p.h, p.h, p.h}, i, {0, 1, 2, 3})) < 1e-6);
    }

    TEST_CASE("covariance under a fixed map") {
        const Params p = Params::make(2.0, 0.0);
        const ZFun Z = [&](const std::vector<double>& x) { return pure_Z(p, kAdjacent, x); };
        CHECK(covariance_ratio(Z, {p.h, p.h, p.h, p.h}, {0, 1, 2, 3}, MobiusMap{1, 0.5, 0.2, 1}) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}
