#include "hsle/partition_fn.hpp"

#include <algorithm>
#include <cmath>

#include "hsle/error.hpp"

namespace hsle {

namespace {

void require4(double x1, double x2, double x3, double x4, const char* who) {
    require_increasing({x1, x2, x3, x4}, who);
    if (!std::isfinite(x1) || !std::isfinite(x4)) fail(ErrorKind::Domain, std::string(who) + ": points must be finite");
}

double log_F_n2(double kappa, double z) {
    return std::log(hyp2f1({4.0 / kappa, 1.0 - 4.0 / kappa, 8.0 / kappa}, z));
}

}  // namespace

double log_z_kappa_nu(const Params& par, double x1, double x2, double x3, double x4) {
    require4(x1, x2, x3, x4, "z_kappa_nu");
    const double z = cross_ratio(x1, x2, x3, x4);
    return -2 * par.h * std::log(x4 - x1) - 2 * par.b * std::log(x3 - x2) + par.a * std::log(z) +
           std::log(F_hsle(par, z));
}

double z_kappa_nu(const Params& par, double x1, double x2, double x3, double x4) {
    return std::exp(log_z_kappa_nu(par, x1, x2, x3, x4));
}

double pure_Z_N1(const Params& par, double x, double y) {
    if (!(x < y)) fail(ErrorKind::Order, "pure_Z_N1: requires x < y");
    return std::exp(-2 * par.h * std::log(y - x));
}

double n2_normalization(double kappa) { return hyp2f1_at_one({4.0 / kappa, 1.0 - 4.0 / kappa, 8.0 / kappa}); }

double pure_Z_N2(const Params& par, const LinkPattern& alpha, double x1, double x2, double x3, double x4) {
    require4(x1, x2, x3, x4, "pure_Z_N2");
    const double k = par.kappa;
    const double z = cross_ratio(x1, x2, x3, x4);
    const double lnorm = std::log(n2_normalization(k));
    double lz;
    if (alpha == LinkPattern::from_links({{1, 4}, {2, 3}})) {
        lz = -2 * par.h * (std::log(x4 - x1) + std::log(x3 - x2)) + 2.0 / k * std::log(z) + log_F_n2(k, z);
    } else if (alpha == LinkPattern::from_links({{1, 2}, {3, 4}})) {
        lz = -2 * par.h * (std::log(x2 - x1) + std::log(x4 - x3)) + 2.0 / k * std::log1p(-z) + log_F_n2(k, 1.0 - z);
    } else {
        fail(ErrorKind::Parameter, "pure_Z_N2: pattern must be one of the two N=2 patterns");
    }
    return std::exp(lz - lnorm);
}

double pure_Z(const Params& par, const LinkPattern& alpha, const std::vector<double>& xs) {
    if (static_cast<int>(xs.size()) != 2 * alpha.N) fail(ErrorKind::Parameter, "pure_Z: point count mismatch");
    switch (alpha.N) {
        case 0: return 1.0;
        case 1: return pure_Z_N1(par, xs[0], xs[1]);
        case 2: return pure_Z_N2(par, alpha, xs[0], xs[1], xs[2], xs[3]);
        default: fail(ErrorKind::Parameter, "pure_Z: no closed form for N >= 3");
    }
}

double log_pure_Z_gaps(const Params& par, const LinkPattern& alpha, const std::vector<double>& lg) {
    if (static_cast<int>(lg.size()) != std::max(0, 2 * alpha.N - 1))
        fail(ErrorKind::Parameter, "log_pure_Z_gaps: gap count mismatch");
    for (double v : lg)
        if (std::isnan(v) || v == INFINITY) fail(ErrorKind::Domain, "log_pure_Z_gaps: gaps must be finite");
    const double h = par.h, k = par.kappa;
    switch (alpha.N) {
        case 0: return 0.0;
        case 1: return -2 * h * lg[0];
        case 2: break;
        default: fail(ErrorKind::Parameter, "log_pure_Z_gaps: no closed form for N >= 3");
    }
    const double d1 = std::exp(lg[0]), d2 = std::exp(lg[1]), d3 = std::exp(lg[2]);
    // z = d1 d3 / ((d1 + d2)(d2 + d3)), 1 - z = d2 (d1 + d2 + d3) / ((d1 + d2)(d2 + d3))
    const double lden = std::log(d1 + d2) + std::log(d2 + d3);
    const double lz = lg[0] + lg[2] - lden;
    const double l1z = lg[1] + std::log(d1 + d2 + d3) - lden;
    const double lnorm = std::log(n2_normalization(k));
    if (alpha == LinkPattern::from_links({{1, 4}, {2, 3}}))
        return -2 * h * (std::log(d1 + d2 + d3) + lg[1]) + 2.0 / k * lz + log_F_n2(k, std::exp(lz)) - lnorm;
    if (alpha == LinkPattern::from_links({{1, 2}, {3, 4}}))
        return -2 * h * (lg[0] + lg[2]) + 2.0 / k * l1z + log_F_n2(k, std::exp(l1z)) - lnorm;
    fail(ErrorKind::Parameter, "log_pure_Z_gaps: pattern must be one of the two N=2 patterns");
}

double bound_B_alpha(const Params& par, const LinkPattern& alpha, const std::vector<double>& xs) {
    if (static_cast<int>(xs.size()) != 2 * alpha.N) fail(ErrorKind::Parameter, "bound_B_alpha: point count mismatch");
    require_increasing(xs, "bound_B_alpha");
    double lb = 0.0;
    for (const Link& l : alpha.links) lb += -2 * par.h * std::log(xs[l.second - 1] - xs[l.first - 1]);
    return std::exp(lb);
}

double pde_residual(const ZFun& Z, double kappa, const std::vector<double>& w, int i, const std::vector<double>& xs,
                    double step) {
    const int n = static_cast<int>(xs.size());
    if (i < 0 || i >= n || static_cast<int>(w.size()) != n) fail(ErrorKind::Parameter, "pde_residual: bad index");
    std::vector<double> y = xs;
    const double z0 = Z(xs);
    auto shifted = [&](int j, double d) {
        y[j] = xs[j] + d;
        const double v = Z(y);
        y[j] = xs[j];
        return v;
    };
    const double zp = shifted(i, step), zm = shifted(i, -step);
    double r = 0.5 * kappa * (zp - 2 * z0 + zm) / (step * step);
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double d = xs[j] - xs[i];
        const double dj = (shifted(j, step) - shifted(j, -step)) / (2 * step);
        r += 2.0 / d * dj - 2.0 * w[j] / (d * d) * z0;
    }
    return r;
}

double pde_residual_extrapolated(const ZFun& Z, double kappa, const std::vector<double>& w, int i,
                                 const std::vector<double>& xs, double rel_step) {
    double gap = kInfinity;
    for (size_t k = 1; k < xs.size(); ++k) gap = std::min(gap, xs[k] - xs[k - 1]);
    const double s = rel_step * gap;
    const double r1 = pde_residual(Z, kappa, w, i, xs, s);
    const double r2 = pde_residual(Z, kappa, w, i, xs, s / 2);
    return (4 * r2 - r1) / 3;
}

double covariance_ratio(const ZFun& Z, const std::vector<double>& w, const std::vector<double>& xs,
                        const MobiusMap& phi) {
    std::vector<double> y(xs.size());
    double lfac = 0.0;
    for (size_t k = 0; k < xs.size(); ++k) {
        y[k] = phi(xs[k]);
        lfac += w[k] * std::log(phi.derivative(xs[k]));
    }
    return Z(xs) / (std::exp(lfac) * Z(y));
}

double asy_ratio(const ZFun& Z, double h, int j, const std::vector<double>& xs, double gap) {
    if (j < 0 || j + 1 >= static_cast<int>(xs.size())) fail(ErrorKind::Parameter, "asy_ratio: bad pair index");
    std::vector<double> y = xs;
    const double mid = 0.5 * (xs[j] + xs[j + 1]);
    y[j] = mid - 0.5 * gap;
    y[j + 1] = mid + 0.5 * gap;
    return Z(y) / std::exp(-2 * h * std::log(gap));
}

double avoid_probability(const Params& par, double x1, double x2, double x3, double x4) {
    const double k = par.kappa, nu = par.nu;
    if (nu >= k / 2 - 4) return 1.0;
    if (!(nu > par.nu_floor())) fail(ErrorKind::Domain, "avoid_probability: nu outside the valid band");
    const Params dual = Params::make(k, k - 8 - nu);
    const double lg = log_gamma((2 * nu + 8) / k) + log_gamma((k - 4 - 2 * nu) / k) -
                      log_gamma((2 * nu + 12 - k) / k) - log_gamma((2 * k - 8 - 2 * nu) / k);
    return std::exp(log_z_kappa_nu(dual, x1, x2, x3, x4) - log_z_kappa_nu(par, x1, x2, x3, x4) + lg);
}

}  // namespace hsle
