#include <cmath>

#include "doctest.h"
#include "hsle/cascade.hpp"
#include "hsle/error.hpp"
#include "hsle/partition_fn.hpp"

using namespace hsle;

namespace {
MCConfig small(long n, int workers = 1) {
    MCConfig c;
    c.n_paths = n;
    c.dt = 1e-3;
    c.seed = 99;
    c.workers = workers;
    return c;
}
}  // namespace

TEST_SUITE("cascade") {
    TEST_CASE("N=2 agrees with the closed form at kappa=4") {
        const Params p = Params::make(4.0, 0.0);
        const LinkPattern a = LinkPattern::parse("1-4,2-3");
        const MarkedPoints xs{0, 1, 2, 3};
        const MCEstimate e = estimate_pure_Z(p, a, xs, 2, small(600));
        CHECK(e.n > 0);
        CHECK(std::fabs(e.mean - pure_Z(p, a, xs)) < 4 * e.se + 0.01);
        CHECK(e.mean <= bound_B_alpha(p, a, xs) * (1 + 3 * e.se / e.mean));
    }

    TEST_CASE("results do not depend on the worker count") {
        const Params p = Params::make(3.0, 0.0);
        const LinkPattern a = LinkPattern::parse("1-2,3-4");
        const MCEstimate e1 = estimate_pure_Z(p, a, {0, 1, 2, 3}, 1, small(100, 1));
        const MCEstimate e2 = estimate_pure_Z(p, a, {0, 1, 2, 3}, 1, small(100, 3));
        CHECK(e1.mean == e2.mean);
        CHECK(e1.se == e2.se);
    }

    TEST_CASE("argument checks") {
        const Params p = Params::make(3.0, 0.0);
        const LinkPattern a = LinkPattern::parse("1-4,2-3");
        CHECK_THROWS_AS(estimate_pure_Z(p, a, {0, 1, 2, 3}, 3, small(10)), Error);
        CHECK_THROWS_AS(estimate_pure_Z(p, a, {0, 1, 2}, 1, small(10)), Error);
        CHECK_THROWS_AS(estimate_pure_Z(p, a, {0, 2, 1, 3}, 1, small(10)), Error);
    }

    TEST_CASE("symmetry report shape") {
        const Params p = Params::make(3.0, 0.0);
        const SymmetryReport r = symmetry_report(p, LinkPattern::parse("1-6,2-3,4-5"), {0, 1, 2, 3, 4, 5}, small(100));
        CHECK(r.rows.size() == 3);
        CHECK(r.pairs.size() == 3);
        CHECK(std::isfinite(r.max_abs_z));
    }
}
