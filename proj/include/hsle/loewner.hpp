#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hsle/geometry.hpp"
#include "hsle/loewner_state.hpp"
#include "hsle/mc.hpp"
#include "hsle/special_fn.hpp"

namespace hsle {

enum class DriverKind { BM, SleRho, Hsle };

struct ForcePoint {
    double x;
    double rho;
};

struct DriverSpec {
    DriverKind kind = DriverKind::BM;
    double kappa = 4.0;
    double w0 = 0.0;
    std::vector<ForcePoint> forces;  // SleRho
    // Hsle: marked points x < y, curve aimed at target (infinity by default)
    double nu = -2.0;
    double x = 1.0;
    double y = 2.0;
    double target = kInfinity;

    static DriverSpec bm(double kappa, double w0 = 0.0);
    static DriverSpec sle_rho(double kappa, std::vector<ForcePoint> forces, double w0 = 0.0);
    static DriverSpec hsle(double kappa, double nu, double x, double y, double target = kInfinity, double w0 = 0.0);
    std::string describe() const;
};

// Chordal SLE_kappa from xa to xb, seen as a chain toward infinity with force rho = kappa - 6 at xb.
DriverSpec target_change_driver(double kappa, double xa, double xb);

// Initial state with the driver's own points first (force points, or x, y[, target]),
// then the extra passive points; labels are positions in that list.
LoewnerState initial_state(const DriverSpec& spec, const std::vector<double>& passive = {});
int driver_point_count(const DriverSpec& spec);

double drift_sle_rho(const LoewnerState& state);
double drift_hsle(const LoewnerState& state, const DriverSpec& spec, const Params& par);
double drift(const LoewnerState& state, const DriverSpec& spec, const Params& par);

// Explicit Euler step: V += 2dt/(V-W), L -= 2dt/(V-W)^2 with the old W; W += drift dt + dW.
void step(LoewnerState& state, double drift, double dW, double dt, double eps = kSwallowEps);

// Sum of rho over force points whose image is within eps of W.
double colliding_rho(const LoewnerState& state, double eps = kSwallowEps);
bool continuation_threshold_reached(const LoewnerState& state, double eps = kSwallowEps);

struct StepControl {
    double dt = 1e-4;
    // divide the step by 10 while min gap^2 < 100 h, down to dt * min_factor
    bool refine = true;
    double min_factor = 1e-4;
    // scale-invariant stepping: h = dt (gap/gap_ref)^2, capped at dt * max_factor
    bool coarsen = false;
    double gap_ref = 1.0;
    double max_factor = 1e6;
    double eps = kSwallowEps;
};

enum class StopReason { Horizon, Threshold, Swallow, Predicate, MaxSteps };
const char* to_string(StopReason r);

struct RunOptions {
    double horizon = 1.0;
    std::vector<int> stop_on_swallow;  // labels
    std::function<bool(const LoewnerState&)> stop_when;
    bool record = false;
    long max_steps = 200000000L;
};

struct DrivingPath {
    std::vector<double> t;
    std::vector<double> W;
    double dt = 0.0;  // base step
    std::uint64_t seed = 0;
    std::string driver;
};

struct RunResult {
    LoewnerState state;
    StopReason reason = StopReason::Horizon;
    int stop_label = -1;
    long steps = 0;
    DrivingPath path;
};

double choose_step(const LoewnerState& state, const StepControl& ctl);

RunResult run_chain(const DriverSpec& spec, const std::vector<double>& passive, const StepControl& ctl,
                    const RunOptions& opt, Rng& rng);

DrivingPath sample_path(const DriverSpec& spec, double T, double dt, std::uint64_t seed, StopReason* reason = nullptr);

struct Trace {
    std::vector<double> t;
    std::vector<std::complex<double>> z;
};

// Backward composition of vertical-slit maps; every `stride`-th sample is reconstructed.
Trace trace_from_path(const DrivingPath& path, int stride = 1);
bool polyline_self_intersects(const Trace& tr);
// lambda W(t / lambda^2)
DrivingPath rescale_path(const DrivingPath& path, double lambda);

}  // namespace hsle
