#pragma once

#include <vector>

namespace hsle {

struct TrackedPoint {
    int label = 0;
    double x0 = 0.0;
    double V = 0.0;
    double L = 0.0;  // log g_t'(x0)
    int side = 1;    // +1 right of the seed, -1 left
    double rho = 0.0;
    bool swallowed = false;
    double t_swallow = -1.0;
};

struct LoewnerState {
    double t = 0.0;
    double W = 0.0;
    std::vector<TrackedPoint> pts;

    static LoewnerState at(double w0, const std::vector<double>& xs, const std::vector<double>& rhos = {});
    int index_of(int label) const;
    const TrackedPoint& point(int label) const { return pts[index_of(label)]; }
    TrackedPoint& point(int label) { return pts[index_of(label)]; }
    // side * (V - W), positive while the point is outside the hull
    double gap(int idx) const { return pts[idx].side * (pts[idx].V - W); }
};

}  // namespace hsle
