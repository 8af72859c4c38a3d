#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "hsle/error.hpp"
#include "hsle/loewner.hpp"

using namespace hsle;

namespace {

// asymptotic two-sample Kolmogorov-Smirnov p-value
double ks_pvalue(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(double(i) / a.size() - double(j) / b.size()));
    }
    const double ne = double(a.size()) * b.size() / (a.size() + b.size());
    const double lam = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) p += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lam * lam);
    return std::clamp(p, 0.0, 1.0);
}

std::vector<double> scaled_increments(const DrivingPath& p, size_t max_n) {
    std::vector<double> out;
    for (size_t k = 1; k < p.t.size() && out.size() < max_n; ++k)
        out.push_back((p.W[k] - p.W[k - 1]) / std::sqrt(p.t[k] - p.t[k - 1]));
    return out;
}

}  // namespace

TEST_SUITE("loewner") {
    TEST_CASE("driver constructors validate marked points") {
        CHECK_THROWS_AS(DriverSpec::hsle(3.0, 0.0, 2.0, 1.0), Error);
        CHECK_THROWS_AS(DriverSpec::hsle(3.0, 0.0, -1.0, 1.0), Error);
        CHECK_NOTHROW(DriverSpec::hsle(3.0, 0.0, 1.0, 2.0));
    }

    TEST_CASE("sample_path is deterministic in the seed") {
        const DriverSpec s = DriverSpec::bm(3.0);
        const DrivingPath a = sample_path(s, 0.1, 1e-3, 11), b = sample_path(s, 0.1, 1e-3, 11);
        const DrivingPath c = sample_path(s, 0.1, 1e-3, 12);
        CHECK(a.W == b.W);
        CHECK(a.W != c.W);
        CHECK(a.t.back() == doctest::Approx(0.1));
    }

    TEST_CASE("Brownian driver has variance kappa t") {
        const int n = 400;
        double s = 0, s2 = 0;
        for (int i = 0; i < n; ++i) {
            const DrivingPath p = sample_path(DriverSpec::bm(3.0), 1.0, 1e-2, 1000 + i);
            s += p.W.back();
            s2 += p.W.back() * p.W.back();
        }
        const double var = (s2 - s * s / n) / (n - 1);
        CHECK(std::fabs(var - 3.0) < 4 * 3.0 * std::sqrt(2.0 / n));
    }

    TEST_CASE("hSLE with nu=-2 has no drift and Brownian increments") {
        const DriverSpec h = DriverSpec::hsle(3.0, -2.0, 1.0, 2.0);
        const Params par = Params::make(3.0, -2.0);
        CHECK(drift(initial_state(h), h, par) == doctest::Approx(0.0).scale(1.0));
        std::vector<double> xb, xh;
        for (int i = 0; i < 40; ++i) {
            auto a = scaled_increments(sample_path(DriverSpec::bm(3.0), 0.05, 1e-4, 500 + i), 200);
            auto b = scaled_increments(sample_path(h, 0.05, 1e-4, 900 + i), 200);
            xb.insert(xb.end(), a.begin(), a.end());
            xh.insert(xh.end(), b.begin(), b.end());
        }
        CHECK(ks_pvalue(xb, xh) > 0.01);
    }

    TEST_CASE("SLE(rho) drift") {
        LoewnerState st = LoewnerState::at(0.0, {1.0}, {2.0});
        CHECK(drift_sle_rho(st) == doctest::Approx(-2.0));
        step(st, 0.0, 0.0, 1e-3);
        CHECK(st.pts[0].V == doctest::Approx(1.002));
    }

    TEST_CASE("constant driver traces a vertical slit") {
        DrivingPath p;
        for (int k = 0; k <= 400; ++k) {
            p.t.push_back(k * 1e-3);
            p.W.push_back(0.0);
        }
        const Trace tr = trace_from_path(p, 20);
        CHECK(tr.z.back().real() == doctest::Approx(0.0).scale(1.0));
        CHECK(tr.z.back().imag() == doctest::Approx(2.0 * std::sqrt(0.4)).epsilon(1e-3));
        CHECK_FALSE(polyline_self_intersects(tr));
    }

    TEST_CASE("Brownian scaling") {
        const DrivingPath p = sample_path(DriverSpec::bm(2.0), 0.1, 1e-3, 3);
        const DrivingPath q = rescale_path(p, 2.0);
        CHECK(q.t.back() == doctest::Approx(0.4));
        CHECK(q.W.back() == doctest::Approx(2.0 * p.W.back()));
        const Trace a = trace_from_path(p, 10), b = trace_from_path(q, 10);
        CHECK(std::abs(b.z.back() - 2.0 * a.z.back()) < 1e-9);
    }

    TEST_CASE("self-intersection detector") {
        Trace tr;
        tr.z = {{0, 0}, {0, 1}, {1, 1}, {1, 0.5}, {-1, 0.5}};
        tr.t = {0, 1, 2, 3, 4};
        CHECK(polyline_self_intersects(tr));
    }
}
