#include "hsle/geometry.hpp"

#include <cmath>
#include <string>

#include "hsle/error.hpp"

namespace hsle {

LoewnerState LoewnerState::at(double w0, const std::vector<double>& xs, const std::vector<double>& rhos) {
    LoewnerState s;
    s.W = w0;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == w0) fail(ErrorKind::Singular, "tracked point coincides with the seed");
        TrackedPoint p;
        p.label = static_cast<int>(i);
        p.x0 = xs[i];
        p.V = xs[i];
        p.side = xs[i] > w0 ? 1 : -1;
        p.rho = i < rhos.size() ? rhos[i] : 0.0;
        s.pts.push_back(p);
    }
    return s;
}

int LoewnerState::index_of(int label) const {
    for (size_t i = 0; i < pts.size(); ++i)
        if (pts[i].label == label) return static_cast<int>(i);
    fail(ErrorKind::NotFound, "no tracked point with label " + std::to_string(label));
}

void require_increasing(const std::vector<double>& xs, const char* who) {
    for (size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i - 1] < xs[i])) fail(ErrorKind::Order, std::string(who) + ": points must be strictly increasing");
}

double MobiusMap::operator()(double x) const {
    if (std::isinf(x)) return r == 0.0 ? kInfinity : p / r;
    const double den = r * x + s;
    if (den == 0.0) return kInfinity;
    return (p * x + q) / den;
}

double MobiusMap::derivative(double x) const {
    const double den = r * x + s;
    return det() / (den * den);
}

MobiusMap MobiusMap::inverse() const { return {s, -q, -r, p}; }

MobiusMap MobiusMap::compose(const MobiusMap& m) const {
    return {p * m.p + q * m.r, p * m.q + q * m.s, r * m.p + s * m.r, r * m.q + s * m.s};
}

MobiusMap MobiusMap::affine(double scale, double shift) { return {scale, shift, 0.0, 1.0}; }

MobiusMap MobiusMap::random(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const MobiusMap pre = affine(0.5 + 2.0 * u(rng), -1.0 + 2.0 * u(rng));
    const MobiusMap post = affine(0.5 + 2.0 * u(rng), -1.0 + 2.0 * u(rng));
    if (u(rng) < 0.25) return post.compose(pre);
    // x -> -1/(x - c) is increasing on (c, inf); put c left of the interval
    const double span = pre(hi) - pre(lo);
    const double c = pre(lo) - span * (0.2 + 2.0 * u(rng));
    const MobiusMap inv{0.0, -1.0, 1.0, -c};
    return post.compose(inv.compose(pre));
}

double cross_ratio(double x1, double x2, double x3, double x4) {
    if (std::isinf(x4)) {
        if (!(x1 < x2 && x2 < x3)) fail(ErrorKind::Order, "cross_ratio: points must be strictly increasing");
        return (x2 - x1) / (x3 - x1);
    }
    if (!(x1 < x2 && x2 < x3 && x3 < x4)) fail(ErrorKind::Order, "cross_ratio: points must be strictly increasing");
    return (x2 - x1) * (x4 - x3) / ((x3 - x1) * (x4 - x2));
}

double poisson_kernel_halfplane(double x, double y) {
    if (x == y) fail(ErrorKind::Singular, "poisson kernel at coincident points");
    if (std::isinf(x) || std::isinf(y)) return 0.0;
    const double d = y - x;
    return 1.0 / (d * d);
}

double poisson_kernel_slit(const LoewnerState& st, int i, int j) {
    const TrackedPoint& a = st.pts.at(i);
    const TrackedPoint& b = st.pts.at(j);
    if (a.swallowed || b.swallowed) fail(ErrorKind::Swallowed, "poisson_kernel_slit: swallowed point");
    if (a.side != b.side) fail(ErrorKind::Parameter, "poisson_kernel_slit: points on opposite sides of the tip");
    const double d = b.V - a.V;
    if (d == 0.0) fail(ErrorKind::Singular, "poisson_kernel_slit: coincident images");
    return std::exp(a.L + b.L) / (d * d);
}

Normalized normalize_to_halfplane(const MarkedPoints& pts, int i0, int i1, int i2) {
    const int n = static_cast<int>(pts.size());
    if (n < 3) fail(ErrorKind::Parameter, "normalize_to_halfplane: need at least three points");
    if (i0 < 0 || i1 < 0 || i2 < 0 || i0 >= n || i1 >= n || i2 >= n || i0 == i1 || i1 == i2 || i0 == i2)
        fail(ErrorKind::Parameter, "normalize_to_halfplane: bad target indices");
    const double a = pts[i0], b = pts[i1], c = pts[i2];
    MobiusMap m;
    if (std::isinf(c)) {
        m = {1.0 / (b - a), -a / (b - a), 0.0, 1.0};
    } else {
        m = {b - c, -a * (b - c), b - a, -c * (b - a)};
    }
    if (!(m.det() > 0.0)) fail(ErrorKind::Order, "normalize_to_halfplane: targets are not in positive cyclic order");
    const double scale = 1.0 / std::sqrt(m.det());
    m = {m.p * scale, m.q * scale, m.r * scale, m.s * scale};
    Normalized out{m, {}};
    for (int k = 0; k < n; ++k) out.points.push_back(k == i2 ? kInfinity : m(pts[k]));
    return out;
}

}  // namespace hsle
