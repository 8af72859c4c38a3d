#include "hsle/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hsle/error.hpp"

namespace hsle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesTol = 1e-15;
constexpr int kMaxTerms = 10000;
constexpr double kSwitchZ = 0.9;

// g = 7, n = 9
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double lanczos_gamma_pos(double x) {
    // x >= 0.5
    x -= 1.0;
    double s = kLanczos[0];
    for (int i = 1; i < 9; ++i) s += kLanczos[i] / (x + i);
    const double t = x + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * s;
}

double lanczos_log_gamma_pos(double x) {
    x -= 1.0;
    double s = kLanczos[0];
    for (int i = 1; i < 9; ++i) s += kLanczos[i] / (x + i);
    const double t = x + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (x + 0.5) * std::log(t) - t + std::log(s);
}

double series(double A, double B, double C, double z) {
    double term = 1.0;
    double sum = 1.0;
    for (int n = 0; n < kMaxTerms; ++n) {
        term *= (A + n) * (B + n) / ((C + n) * (n + 1.0)) * z;
        sum += term;
        if (term == 0.0 || std::fabs(term) < kSeriesTol * std::fabs(sum)) return sum;
    }
    fail(ErrorKind::Domain, "hyp2f1: series did not converge in 10000 terms");
}

// Linear combination of the two solutions around z = 1.
double connection(double A, double B, double C, double z) {
    const double w = 1.0 - z;
    const double m = C - A - B;
    const double c1 = gamma_fn(C) * gamma_fn(m) * rgamma(C - A) * rgamma(C - B);
    const double c2 = gamma_fn(C) * gamma_fn(-m) * rgamma(A) * rgamma(B);
    double out = 0.0;
    if (c1 != 0.0) out += c1 * series(A, B, 1.0 - m, w);
    if (c2 != 0.0) out += c2 * std::pow(w, m) * series(C - A, C - B, 1.0 + m, w);
    return out;
}

double near_one(double A, double B, double C, double z) {
    const double m = C - A - B;
    const double d = std::fabs(m - std::round(m));
    if (d >= 5e-4) return connection(A, B, C, z);
    // m is close to an integer: symmetric perturbation in C, fourth order.
    const double eps = 2e-3;
    const double s1 = 0.5 * (connection(A, B, C + eps, z) + connection(A, B, C - eps, z));
    const double s2 = 0.5 * (connection(A, B, C + 2 * eps, z) + connection(A, B, C - 2 * eps, z));
    return (4.0 * s1 - s2) / 3.0;
}

}  // namespace

double gamma_fn(double x) {
    if (is_nonpositive_integer(x)) fail(ErrorKind::Domain, "gamma: pole at " + std::to_string(x));
    if (x < 0.5) return kPi / (std::sin(kPi * x) * lanczos_gamma_pos(1.0 - x));
    if (x > 140.0) return std::exp(lanczos_log_gamma_pos(x));
    return lanczos_gamma_pos(x);
}

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x < 0.5) return std::sin(kPi * x) * lanczos_gamma_pos(1.0 - x) / kPi;
    return 1.0 / gamma_fn(x);
}

double log_gamma(double x) {
    if (is_nonpositive_integer(x)) fail(ErrorKind::Domain, "log_gamma: pole");
    if (x < 0.5) return std::log(kPi / std::fabs(std::sin(kPi * x))) - lanczos_log_gamma_pos(1.0 - x);
    return lanczos_log_gamma_pos(x);
}

double hyp2f1(const HypParams& p, double z) {
    const double A = p.A, B = p.B, C = p.C;
    if (is_nonpositive_integer(C)) fail(ErrorKind::Parameter, "hyp2f1: C is a nonpositive integer");
    if (!(z >= 0.0) || z > 1.0) fail(ErrorKind::Domain, "hyp2f1: z outside [0,1]");
    if (z == 0.0 || A == 0.0 || B == 0.0) return 1.0;
    if (z == 1.0) return hyp2f1_at_one(p);
    if (z <= kSwitchZ || is_nonpositive_integer(A) || is_nonpositive_integer(B)) return series(A, B, C, z);
    if (is_nonpositive_integer(C - A) || is_nonpositive_integer(C - B))
        return std::pow(1.0 - z, C - A - B) * series(C - A, C - B, C, z);
    return near_one(A, B, C, z);
}

double hyp2f1_at_one(const HypParams& p) {
    if (is_nonpositive_integer(p.C)) fail(ErrorKind::Parameter, "hyp2f1_at_one: C is a nonpositive integer");
    if (!(p.C > p.A + p.B)) fail(ErrorKind::Domain, "hyp2f1_at_one: requires C > A + B");
    if (p.A == 0.0 || p.B == 0.0) return 1.0;
    return gamma_fn(p.C) * gamma_fn(p.C - p.A - p.B) * rgamma(p.C - p.A) * rgamma(p.C - p.B);
}

Params Params::make(double kappa, double nu) {
    if (!(kappa > 0.0 && kappa < 8.0)) fail(ErrorKind::Parameter, "kappa must lie in (0,8)");
    if (!std::isfinite(nu)) fail(ErrorKind::Parameter, "nu must be finite");
    Params p;
    p.kappa = kappa;
    p.nu = nu;
    p.h = (6.0 - kappa) / (2.0 * kappa);
    p.a = (nu + 2.0) / kappa;
    p.b = (nu + 2.0) * (nu + 6.0 - kappa) / (4.0 * kappa);
    p.low_nu = nu <= p.nu_floor();
    return p;
}

double Params::nu_floor() const { return std::max(-4.0, kappa / 2.0 - 6.0); }

namespace {

HypParams high_params(const Params& par) {
    const double k = par.kappa, nu = par.nu;
    return {(2 * nu + 4) / k, 1.0 - 4.0 / k, (2 * nu + 8) / k};
}

HypParams low_params(const Params& par) {
    const double k = par.kappa, nu = par.nu;
    return {(2 * nu + 12 - k) / k, 4.0 / k, 8.0 / k};
}

}  // namespace

double G_hsle(const Params& par, double z) { return hyp2f1(low_params(par), z); }

double F_hsle(const Params& par, double z) {
    if (z < 0.0 || z > 1.0) fail(ErrorKind::Domain, "F_hsle: z outside [0,1]");
    if (!par.low_nu) return hyp2f1(high_params(par), z);
    const double e = 8.0 / par.kappa - 1.0;
    if (z == 1.0) return 0.0;
    return std::pow(1.0 - z, e) * G_hsle(par, 1.0 - z);
}

double F_prime(const Params& par, double z) {
    if (!(z > 0.0 && z < 1.0)) fail(ErrorKind::Domain, "F_prime: z outside (0,1)");
    const double k = par.kappa, nu = par.nu;
    if (!par.low_nu) {
        if (nu == -2.0 || k == 4.0) return 0.0;
        const double f = hyp2f1({4.0 / k, (12 + 2 * nu) / k - 1.0, (8 + 2 * nu) / k + 1.0}, z);
        return ((nu + 2) / (nu + 4)) * (1.0 - 4.0 / k) * std::pow(1.0 - z, 8.0 / k - 2.0) * f;
    }
    const HypParams g = low_params(par);
    const double e = 8.0 / k - 1.0;
    const double u = 1.0 - z;
    const double G = hyp2f1(g, u);
    const double dG = g.A * g.B / g.C * hyp2f1({g.A + 1, g.B + 1, g.C + 1}, u);
    return -e * std::pow(u, e - 1.0) * G - std::pow(u, e) * dG;
}

double euler_ode_residual(const Params& par, double z, double step) {
    if (!(step > 0.0) || z - step <= 0.0 || z + step >= 1.0)
        fail(ErrorKind::Domain, "euler_ode_residual: stencil leaves (0,1)");
    const double k = par.kappa, nu = par.nu;
    const double fm = F_hsle(par, z - step);
    const double f0 = F_hsle(par, z);
    const double fp = F_hsle(par, z + step);
    const double d1 = (fp - fm) / (2 * step);
    const double d2 = (fp - 2 * f0 + fm) / (step * step);
    const double c1 = (2 * nu + 8) / k - (2 * nu + 2 * k) / k * z;
    const double c0 = 2 * (nu + 2) * (k - 4) / (k * k);
    return z * (1 - z) * d2 + c1 * d1 - c0 * f0;
}

}  // namespace hsle
