#pragma once

#include <string>
#include <vector>

#include "hsle/geometry.hpp"
#include "hsle/mc.hpp"
#include "hsle/special_fn.hpp"

namespace hsle {

struct ExperimentResult {
    std::string experiment;
    std::string params;  // "key=value;..."
    MCEstimate estimate;
    double target = 0.0;
    double zscore = 0.0;
    double allowance = 0.0;  // discretization widening added to 3 stderr
    double dt = 0.0;
    std::uint64_t seed = 0;
    long unclassified = 0;
    std::string note;

    bool pass(double nsigma = 3.0) const;
};

struct CrossingConfig {
    MCConfig mc;
    // a path is x2-side once z_t < delta, x4-side once z_t > 1 - delta
    double delta = 1e-3;
    // capacity horizon in the frame x1 = 0, x2 = 1, x4 = infinity
    double horizon = 1e6;
    long max_steps_per_path = 0;  // 0: 200 / dt
};

// kappa = 4, SLE_4(nu+2, -nu-2) from x1 toward x4; fraction of paths ending at x4.
ExperimentResult terminal_endpoint_kappa4(double nu, const MarkedPoints& pts, const CrossingConfig& cfg);

// E[M_t] for M_t = z_t^alpha at capacity t_check in the original quad, stopped at the continuation threshold.
ExperimentResult martingale_check_kappa4(double nu, const MarkedPoints& pts, const MCConfig& cfg, double t_check);

struct AvoidConfig {
    MCConfig mc;
    double swallow_eps = 1e-12;
    // far field: once (g(x3) - g(x2)) < far_delta (g(x3) - W) the hull is treated as transient
    double far_delta = 1e-9;
    long max_steps_per_path = 0;  // 0: 2000 / dt; reaching it also counts as transient
};

// hSLE_kappa(nu) in the quad; fraction of paths whose hull never meets (x2, x3).
ExperimentResult avoid_probability_mc(const Params& par, const MarkedPoints& pts, const AvoidConfig& cfg);

struct PoissonConfig {
    MCConfig mc;
    double horizon = 0.0;  // 0: 50 * y^2
};

struct PoissonResult {
    ExperimentResult martingale;  // M_T = Z^a J^b F(Z) at the horizon vs M_0
    ExperimentResult kernel;      // H_D(x, y)^b vs M_0 / F(1)
    double M0 = 0.0;
    double frac_z_low = 0.0;  // fraction of paths with Z_T < 0.99
    bool horizon_warning = false;
};

// Plain SLE_kappa from 0 to infinity; terminal Poisson kernel of (x, y) in H minus the hull.
PoissonResult poisson_martingale_identity(const Params& par, double x, double y, const PoissonConfig& cfg);

double martingale_M0(const Params& par, double x, double y);

}  // namespace hsle
