#include <algorithm>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <numeric>
#include <random>

#include "hsle/error.hpp"
#include "hsle/ising.hpp"

namespace hsle {

namespace {

using cd = std::complex<double>;

// square root in the closed upper half-plane, continuous with w - x at infinity on the real line
cd sqrt_upper(cd radicand, cd u) {
    cd r = std::sqrt(radicand);
    if (r.imag() < 0.0 || (r.imag() == 0.0 && (r.real() < 0.0) != (u.real() < 0.0))) r = -r;
    return r;
}

// theta_2 / theta_3 and theta_4 / theta_3 at nome q give sqrt k and sqrt k'
void moduli_from_nome(double q, double& k, double& kp) {
    double t2 = 0.0, t3 = 1.0, t4 = 1.0;
    for (int n = 0;; ++n) {
        const double a = std::pow(q, n * (n + 1.0));
        t2 += a;
        if (n >= 1) {
            const double b = std::pow(q, static_cast<double>(n) * n);
            t3 += 2.0 * b;
            t4 += (n % 2 ? -2.0 : 2.0) * b;
            if (b < 1e-18 && a < 1e-18) break;
        }
    }
    t2 *= 2.0 * std::pow(q, 0.25);
    k = (t2 / t3) * (t2 / t3);
    kp = (t4 / t3) * (t4 / t3);
}

}  // namespace

RectangleMap::RectangleMap(double width, double height, cd a, cd b) : width_(width), height_(height) {
    if (!(width > 0.0 && height > 0.0)) fail(ErrorKind::Parameter, "RectangleMap: positive width and height required");
    // [0, W] x [0, H] -> [-K, K] x [0, K'] needs K'/K = 2H/W, i.e. nome q = exp(-2 pi H / W)
    double kp;
    moduli_from_nome(std::exp(-2.0 * M_PI * height / width), k_, kp);
    K_ = boost::math::ellint_1(k_);
    const cd A = sn_image(a), B = sn_image(b);
    if (std::abs(A.imag()) > 1e-9 * (1.0 + std::abs(A)))
        fail(ErrorKind::Parameter, "RectangleMap: start vertex is not on the boundary");
    A_ = A.real();
    if (!std::isfinite(std::abs(B)) || std::abs(B) > 1e12) {
        B_ = INFINITY;
        sign_ = 1.0;
    } else {
        B_ = B.real();
        sign_ = B_ > A_ ? 1.0 : -1.0;
    }
}

cd RectangleMap::sn_image(cd z) const {
    const double scale = 2.0 * K_ / width_;
    const double x = (z.real() - 0.5 * width_) * scale, y = z.imag() * scale;
    double c, d, c1, d1;
    const double s = boost::math::jacobi_elliptic(k_, x, &c, &d);
    const double kp = std::sqrt((1.0 - k_) * (1.0 + k_));
    const double s1 = boost::math::jacobi_elliptic(kp, y, &c1, &d1);
    const double den = c1 * c1 + k_ * k_ * s * s * s1 * s1;
    if (den == 0.0) return {INFINITY, 0.0};
    return {s * d1 / den, c * d * s1 * c1 / den};
}

cd RectangleMap::operator()(cd z) const {
    const cd w = sn_image(z);
    if (!std::isfinite(w.real())) return std::isinf(B_) ? w : cd(-sign_, 0.0);
    if (std::isinf(B_)) return w - A_;
    return sign_ * (w - A_) / (B_ - w);
}

DrivingPath zipper(const std::vector<cd>& pts, long* skipped) {
    if (pts.empty()) fail(ErrorKind::Parameter, "zipper: empty path");
    if (std::abs(pts[0].imag()) > 1e-9 * (1.0 + std::abs(pts[0]))) fail(ErrorKind::Parameter, "zipper: path must start on R");
    std::vector<cd> z(pts.begin(), pts.end());
    DrivingPath d;
    d.driver = "zipper";
    if (skipped) *skipped = 0;
    d.t.push_back(0.0);
    d.W.push_back(z[0].real());
    double t = 0.0;
    for (size_t k = 1; k < z.size(); ++k) {
        const double x = z[k].real(), y = z[k].imag();
        if (!(y > 1e-14 * (1.0 + std::abs(x))) || !std::isfinite(x)) {
            if (skipped) ++*skipped;
            continue;
        }
        t += 0.25 * y * y;
        d.t.push_back(t);
        d.W.push_back(x);
        // vertical slit from x to x + iy
        const double y2 = y * y;
        for (size_t m = k + 1; m < z.size(); ++m) {
            const cd u = z[m] - x;
            if (u == cd(0.0, 0.0)) continue;
            z[m] = x + sqrt_upper(u * u + y2, u);
        }
    }
    return d;
}

DrivingPath extract_driving(const InterfacePath& path, const LatticeDomain& dom, int max_points, long* skipped) {
    if (path.end_mark < 0) fail(ErrorKind::Parameter, "extract_driving: path does not end at a marked point");
    const auto [ax, ay] = dom.mark_vertex(path.start_mark);
    const auto [bx, by] = dom.mark_vertex(path.end_mark);
    const RectangleMap map(dom.width, dom.height, cd(ax, ay), cd(bx, by));
    const size_t n = path.vertices.size();
    std::vector<size_t> idx;
    if (max_points > 1 && n > static_cast<size_t>(max_points)) {
        for (int k = 0; k < max_points; ++k) idx.push_back(static_cast<size_t>(k) * (n - 1) / (max_points - 1));
    } else {
        idx.resize(n);
        std::iota(idx.begin(), idx.end(), size_t{0});
    }
    std::vector<cd> pts;
    // the last vertex is b, sent to infinity
    for (size_t i : idx) {
        if (i + 1 == n) break;
        const cd z = map(cd(path.vertices[i].first, path.vertices[i].second));
        if (!pts.empty() && z == pts.back()) continue;
        pts.push_back(z);
    }
    pts[0] = pts[0].real();
    return zipper(pts, skipped);
}

KappaEstimate kappa_estimate(const std::vector<DrivingPath>& drivings, std::uint64_t seed, int grid, int bootstrap) {
    if (drivings.size() < 200) fail(ErrorKind::Parameter, "kappa_estimate: need at least 200 paths");
    if (grid < 3) fail(ErrorKind::Parameter, "kappa_estimate: grid too small");
    double T = INFINITY;
    for (const auto& d : drivings) {
        if (d.t.size() < 2) fail(ErrorKind::Parameter, "kappa_estimate: empty driving path");
        T = std::min(T, d.t.back());
    }
    KappaEstimate ke;
    ke.t_max = 0.25 * T;
    ke.grid = grid;
    const size_t n = drivings.size();
    std::vector<double> tg(grid);
    for (int j = 0; j < grid; ++j) tg[j] = ke.t_max * (j + 1) / grid;
    // X[p][j] = W(t_j) - W(0), piecewise constant in t
    std::vector<std::vector<double>> X(n, std::vector<double>(grid));
    for (size_t p = 0; p < n; ++p) {
        const auto& d = drivings[p];
        size_t i = 0;
        for (int j = 0; j < grid; ++j) {
            while (i + 1 < d.t.size() && d.t[i + 1] <= tg[j]) ++i;
            X[p][j] = d.W[i] - d.W[0];
        }
    }
    auto slope_of = [&](const std::vector<size_t>& sel) {
        std::vector<double> v(grid);
        const double m = static_cast<double>(sel.size());
        for (int j = 0; j < grid; ++j) {
            double s = 0.0, s2 = 0.0;
            for (size_t p : sel) {
                s += X[p][j];
                s2 += X[p][j] * X[p][j];
            }
            v[j] = (s2 - s * s / m) / (m - 1.0);
        }
        // weighted least squares, weights 1/t^2 (sd of the sample variance grows like t)
        double sw = 0.0, tm = 0.0, vm = 0.0;
        for (int j = 0; j < grid; ++j) {
            const double w = 1.0 / (tg[j] * tg[j]);
            sw += w;
            tm += w * tg[j];
            vm += w * v[j];
        }
        tm /= sw;
        vm /= sw;
        double num = 0.0, den = 0.0;
        for (int j = 0; j < grid; ++j) {
            const double w = 1.0 / (tg[j] * tg[j]);
            num += w * (tg[j] - tm) * (v[j] - vm);
            den += w * (tg[j] - tm) * (tg[j] - tm);
        }
        return num / den;
    };
    std::vector<size_t> all(n);
    std::iota(all.begin(), all.end(), size_t{0});
    ke.slope = slope_of(all);
    if (bootstrap > 1) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<size_t> pick(0, n - 1);
        std::vector<double> bs;
        std::vector<size_t> sel(n);
        for (int b = 0; b < bootstrap; ++b) {
            for (auto& s : sel) s = pick(rng);
            bs.push_back(slope_of(sel));
        }
        double m = 0.0, s2 = 0.0;
        for (double x : bs) m += x;
        m /= bs.size();
        for (double x : bs) s2 += (x - m) * (x - m);
        ke.stderr_ = std::sqrt(s2 / (bs.size() - 1));
    }
    return ke;
}

}  // namespace hsle
