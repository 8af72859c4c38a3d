#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "hsle/error.hpp"
#include "hsle/ising.hpp"

using namespace hsle;
using cd = std::complex<double>;

namespace {

SpinConfig filled(int w, int h, int s) { return {w, h, std::vector<signed char>(static_cast<size_t>(w) * h, static_cast<signed char>(s))}; }

std::string error_of(const std::string& text) {
    try {
        LatticeDomain::parse(text);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

std::vector<DrivingPath> brownian(double kappa, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<DrivingPath> out(n);
    for (auto& d : out) {
        double w = 0.0;
        for (int k = 0; k <= 400; ++k) {
            d.t.push_back(k * 0.01);
            d.W.push_back(w);
            w += std::sqrt(kappa * 0.01) * g(rng);
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("ising") {
    TEST_CASE("domain files") {
        const LatticeDomain d = LatticeDomain::parse("# demo\nwidth = 4\nheight = 3\nstart = 1\narcs = 4:minus 3:+ 4:- 3:free\n");
        CHECK(d.width == 4);
        CHECK(d.arcs.size() == 4);
        CHECK(d.arcs[3].condition == Boundary::Free);
        CHECK(LatticeDomain::parse(d.to_string()).to_string() == d.to_string());
        const std::string e1 = error_of("width = 32\nheight = x\narcs = 128:plus\n");
        CHECK(e1.find("line 2") != std::string::npos);
        CHECK(e1.find("height") != std::string::npos);
        CHECK(error_of("width = 4\nheight = 4\narcs = 4:plus 4:wobbly 4:plus 4:minus\n").find("line 3") != std::string::npos);
        CHECK(error_of("width = 4\nheight = 4\narcs = 4:plus 4:minus\n").find("sum") != std::string::npos);
        CHECK(error_of("width = 4\narcs = 8:plus 8:minus\n").find("height") != std::string::npos);
        CHECK_THROWS_AS(LatticeDomain::load("/nonexistent/domain.txt"), Error);
    }

    TEST_CASE("boundary ring") {
        const LatticeDomain d = LatticeDomain::quad(5, 3, Boundary::Minus, Boundary::Plus, Boundary::Minus, Boundary::Plus);
        CHECK(d.ring_size() == 16);
        CHECK(d.ring_site(0) == std::make_pair(0, -1));
        CHECK(d.ring_site(5) == std::make_pair(5, 0));
        CHECK(d.ring_site(8) == std::make_pair(4, 3));
        CHECK(d.ring_site(13) == std::make_pair(-1, 2));
        const auto ms = d.marks();
        CHECK(ms.size() == 4);
        CHECK(d.ring_condition(ms[0]) == Boundary::Minus);
        CHECK(d.ring_condition(ms[1]) == Boundary::Plus);
        const LatticeDomain dob = LatticeDomain::dobrushin(8, 6);
        CHECK(dob.mark_vertex(0) == std::make_pair(4, 0));
        CHECK(dob.mark_vertex(1) == std::make_pair(4, 6));
    }

    TEST_CASE("fixed boundary drives the magnetization") {
        const LatticeDomain plus = LatticeDomain::quad(16, 16, Boundary::Plus, Boundary::Plus, Boundary::Plus, Boundary::Plus);
        SamplerOptions cold;
        cold.beta = 1.0;
        const SpinConfig c = sample_critical(plus, 3, cold);
        double m = 0;
        for (auto s : c.spins) m += s;
        CHECK(m / c.spins.size() > 0.9);
        const SpinConfig c2 = sample_critical(plus, 3, cold);
        CHECK(c.spins == c2.spins);
        CHECK(thermalization_floor(plus) == 1600);
        CHECK(energy(filled(16, 16, 1), plus) < energy(filled(16, 16, -1), plus));
    }

    TEST_CASE("Wolff decorrelates by 40 L steps") {
        const LatticeDomain d = LatticeDomain::dobrushin(16, 16);
        CHECK(std::fabs(energy_autocorrelation(d, 5, 40 * 16, 300)) < 0.15);
    }

    TEST_CASE("straight Dobrushin interface") {
        const LatticeDomain d = LatticeDomain::dobrushin(8, 8);
        SpinConfig c = filled(8, 8, -1);
        for (int j = 0; j < 8; ++j)
            for (int i = 0; i < 4; ++i) c.at(i, j) = 1;
        for (Chirality ch : {Chirality::TurnLeft, Chirality::TurnRight}) {
            const InterfacePath p = trace_interface(c, d, 0, ch);
            CHECK(p.end_mark == 1);
            CHECK(p.left_spin == 1);
            REQUIRE(p.vertices.size() == 9);
            for (int k = 0; k <= 8; ++k) CHECK(p.vertices[k] == std::make_pair(4, k));
        }
        const InterfacePath p = trace_interface(c, d, 0, Chirality::TurnLeft);
        const DrivingPath w = extract_driving(p, d);
        CHECK(w.t.size() > 3);
        for (double x : w.W) CHECK(x == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    }

    TEST_CASE("crossing fixtures") {
        const LatticeDomain q = LatticeDomain::quad(8, 8, Boundary::Minus, Boundary::Plus, Boundary::Minus, Boundary::Plus);
        SpinConfig c = filled(8, 8, 1);
        CrossingEvents e = crossing_events(c, q);
        CHECK_FALSE(e.v_minus);
        CHECK(e.h_plus);
        CHECK(e.h_plus_star);
        for (int j = 0; j < 8; ++j) c.at(3, j) = -1;
        e = crossing_events(c, q);
        CHECK(e.v_minus);
        CHECK_FALSE(e.h_plus);
        CHECK_FALSE(e.h_plus_star);
        // a diagonal minus staircase blocks plus 8-paths only where it is 4-connected
        SpinConfig s = filled(8, 8, 1);
        for (int j = 0; j < 8; ++j) s.at(j, j) = -1;
        e = crossing_events(s, q);
        CHECK_FALSE(e.v_minus);
        CHECK(e.h_plus_star);
        CHECK_FALSE(e.h_plus);
    }

    TEST_CASE("zipper on a vertical slit") {
        std::vector<cd> pts;
        for (int k = 0; k <= 50; ++k) pts.emplace_back(0.3, 0.02 * k);
        long skipped = -1;
        const DrivingPath d = zipper(pts, &skipped);
        CHECK(skipped == 0);
        CHECK(d.t.back() == doctest::Approx(0.25).epsilon(1e-9));
        for (double w : d.W) CHECK(w == doctest::Approx(0.3));
        CHECK_THROWS_AS(zipper({cd(0, 1)}), Error);
    }

    TEST_CASE("zipper inverts the slit trace") {
        DrivingPath p;
        for (int k = 0; k <= 200; ++k) {
            p.t.push_back(k * 1e-3);
            p.W.push_back(std::sin(0.05 * k));
        }
        const Trace tr = trace_from_path(p, 1);
        const DrivingPath back = zipper(tr.z);
        REQUIRE(back.W.size() == p.W.size());
        CHECK(back.t.back() == doctest::Approx(p.t.back()).epsilon(1e-6));
        for (size_t k = 0; k < p.W.size(); k += 20) CHECK(back.W[k] == doctest::Approx(p.W[k]).epsilon(1e-6));
    }

    TEST_CASE("rectangle map") {
        const RectangleMap m(4.0, 4.0, cd(2, 0), cd(2, 4));
        CHECK(std::abs(m(cd(2, 0))) < 1e-12);
        CHECK(std::abs(m(cd(2, 4))) > 1e8);
        for (cd z : {cd(0.5, 0), cd(4, 1.5), cd(1.0, 4.0), cd(0, 3.0)}) CHECK(std::fabs(m(z).imag()) < 1e-9);
        CHECK(m(cd(2, 2)).imag() > 0);
        // the midline is the imaginary axis
        CHECK(std::fabs(m(cd(2, 1)).real()) < 1e-12);
        CHECK(m(cd(3, 0)).real() * m(cd(1, 0)).real() < 0);
    }

    TEST_CASE("kappa estimate on synthetic drivers") {
        for (double k : {3.0, 6.0}) {
            const KappaEstimate e = kappa_estimate(brownian(k, 1000, 40 + static_cast<int>(k)), 7);
            CHECK(std::fabs(e.slope - k) < 4 * e.stderr_);
            CHECK(e.stderr_ > 0);
        }
        CHECK_THROWS_AS(kappa_estimate(brownian(3.0, 50, 1)), Error);
    }

    TEST_CASE("Dobrushin 32x32 endpoint contract") {
        const LatticeDomain d = LatticeDomain::dobrushin(32, 32);
        for (std::uint64_t s = 0; s < 10; ++s) {
            const InterfacePath p = trace_interface(sample_critical(d, s), d, 0, Chirality::TurnLeft);
            CHECK(p.end_mark == 1);
            CHECK(p.vertices.front() == d.mark_vertex(0));
            CHECK(p.vertices.back() == d.mark_vertex(1));
        }
    }
}
