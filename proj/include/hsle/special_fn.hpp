#pragma once

namespace hsle {

struct HypParams {
    double A;
    double B;
    double C;
};

// Lanczos approximation, reflection for negative arguments.
double gamma_fn(double x);
// 1/Gamma(x); exactly 0 at the poles 0, -1, -2, ...
double rgamma(double x);
double log_gamma(double x);  // log|Gamma(x)|

double hyp2f1(const HypParams& p, double z);
double hyp2f1_at_one(const HypParams& p);

struct Params {
    double kappa = 4.0;
    double nu = -2.0;
    double h = 0.25;
    double a = 0.0;
    double b = 0.0;
    bool low_nu = false;

    static Params make(double kappa, double nu);
    // max(-4, kappa/2 - 6)
    double nu_floor() const;
};

// Hypergeometric solution of the Euler ODE used by hSLE; branch chosen by par.low_nu.
double F_hsle(const Params& par, double z);
double F_prime(const Params& par, double z);
// G(z) = 2F1((2nu+12-kappa)/kappa, 4/kappa, 8/kappa; z)
double G_hsle(const Params& par, double z);
double euler_ode_residual(const Params& par, double z, double step);

}  // namespace hsle
