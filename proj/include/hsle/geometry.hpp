#pragma once

#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "hsle/loewner_state.hpp"

namespace hsle {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kSwallowEps = 1e-6;

using MarkedPoints = std::vector<double>;

void require_increasing(const std::vector<double>& xs, const char* who);

// x -> (p x + q) / (r x + s), ps - qr > 0
struct MobiusMap {
    double p = 1, q = 0, r = 0, s = 1;

    double operator()(double x) const;
    double derivative(double x) const;
    double det() const { return p * s - q * r; }
    MobiusMap inverse() const;
    MobiusMap compose(const MobiusMap& inner) const;  // this o inner

    static MobiusMap affine(double scale, double shift);
    // random orientation-preserving map that keeps [lo, hi] away from its pole
    static MobiusMap random(std::mt19937_64& rng, double lo, double hi);
};

double cross_ratio(double x1, double x2, double x3, double x4);
double poisson_kernel_halfplane(double x, double y);
double poisson_kernel_slit(const LoewnerState& state, int i, int j);

struct Normalized {
    MobiusMap map;
    MarkedPoints points;
};

// Sends pts[i0] -> 0, pts[i1] -> 1, pts[i2] -> infinity.
Normalized normalize_to_halfplane(const MarkedPoints& pts, int i0, int i1, int i2);

}  // namespace hsle
