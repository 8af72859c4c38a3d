#include "hsle/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hsle/error.hpp"

namespace hsle {

DriverSpec DriverSpec::bm(double kappa, double w0) {
    DriverSpec s;
    s.kind = DriverKind::BM;
    s.kappa = kappa;
    s.w0 = w0;
    return s;
}

DriverSpec DriverSpec::sle_rho(double kappa, std::vector<ForcePoint> forces, double w0) {
    DriverSpec s = bm(kappa, w0);
    s.kind = DriverKind::SleRho;
    s.forces = std::move(forces);
    return s;
}

DriverSpec DriverSpec::hsle(double kappa, double nu, double x, double y, double target, double w0) {
    if (!(w0 < x && x < y && y < target)) fail(ErrorKind::Order, "hsle driver: requires seed < x < y < target");
    DriverSpec s = bm(kappa, w0);
    s.kind = DriverKind::Hsle;
    s.nu = nu;
    s.x = x;
    s.y = y;
    s.target = target;
    return s;
}

std::string DriverSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind) {
        case DriverKind::BM: os << "bm(kappa=" << kappa; break;
        case DriverKind::SleRho:
            os << "sle_rho(kappa=" << kappa << ";forces=";
            for (size_t i = 0; i < forces.size(); ++i) os << (i ? "|" : "") << forces[i].x << ":" << forces[i].rho;
            break;
        case DriverKind::Hsle:
            os << "hsle(kappa=" << kappa << ";nu=" << nu << ";x=" << x << ";y=" << y;
            if (std::isfinite(target)) os << ";target=" << target;
            break;
    }
    os << ";w0=" << w0 << ")";
    return os.str();
}

DriverSpec target_change_driver(double kappa, double xa, double xb) {
    if (xa == xb) fail(ErrorKind::Parameter, "target_change_driver: endpoints coincide");
    return DriverSpec::sle_rho(kappa, {{xb, kappa - 6.0}}, xa);
}

int driver_point_count(const DriverSpec& spec) {
    switch (spec.kind) {
        case DriverKind::BM: return 0;
        case DriverKind::SleRho: return static_cast<int>(spec.forces.size());
        case DriverKind::Hsle: return std::isfinite(spec.target) ? 3 : 2;
    }
    return 0;
}

LoewnerState initial_state(const DriverSpec& spec, const std::vector<double>& passive) {
    std::vector<double> xs, rhos;
    switch (spec.kind) {
        case DriverKind::BM: break;
        case DriverKind::SleRho:
            for (const auto& f : spec.forces) {
                xs.push_back(f.x);
                rhos.push_back(f.rho);
            }
            break;
        case DriverKind::Hsle:
            xs = {spec.x, spec.y};
            rhos = {spec.nu + 2, -(spec.nu + 2)};
            if (std::isfinite(spec.target)) {
                xs.push_back(spec.target);
                rhos.push_back(spec.kappa - 6.0);
            }
            break;
    }
    rhos.resize(xs.size(), 0.0);
    for (double p : passive) {
        xs.push_back(p);
        rhos.push_back(0.0);
    }
    return LoewnerState::at(spec.w0, xs, rhos);
}

double drift_sle_rho(const LoewnerState& st) {
    double d = 0.0;
    for (const auto& p : st.pts)
        if (p.rho != 0.0) d += p.rho / (st.W - p.V);
    return d;
}

double drift_hsle(const LoewnerState& st, const DriverSpec& spec, const Params& par) {
    const TrackedPoint& px = st.pts[0];
    const TrackedPoint& py = st.pts[1];
    if (px.swallowed) fail(ErrorKind::Swallowed, "drift_hsle: x swallowed");
    const double W = st.W;
    const double k = par.kappa;
    const double c = par.nu + 2.0;
    if (!std::isfinite(spec.target)) {
        const double Z = (px.V - W) / (py.V - W);
        if (Z < -1e-9 || Z > 1.0 + 1e-9) fail(ErrorKind::StateCorruption, "drift_hsle: Z outside [0,1]");
        double d = c / (W - px.V) - c / (W - py.V);
        if (c != 0.0 && k != 4.0 && Z > 0.0 && Z < 1.0)
            d -= k * F_prime(par, Z) / F_hsle(par, Z) * (1.0 - Z) / (py.V - W);
        return d;
    }
    // quad (W, Vx, Vy, Vt): kappa * d/dx1 log Z_{kappa,nu}
    const double x2 = px.V, x3 = py.V, x4 = st.pts[2].V;
    const double z = (x2 - W) * (x4 - x3) / ((x3 - W) * (x4 - x2));
    if (z < -1e-9 || z > 1.0 + 1e-9) fail(ErrorKind::StateCorruption, "drift_hsle: cross-ratio outside [0,1]");
    double g = par.a;
    if (c != 0.0 && k != 4.0 && z > 0.0 && z < 1.0) g += z * F_prime(par, z) / F_hsle(par, z);
    return k * (2.0 * par.h / (x4 - W) + g * (1.0 / (x3 - W) - 1.0 / (x2 - W)));
}

double drift(const LoewnerState& st, const DriverSpec& spec, const Params& par) {
    switch (spec.kind) {
        case DriverKind::BM: return 0.0;
        case DriverKind::SleRho: return drift_sle_rho(st);
        case DriverKind::Hsle: return drift_hsle(st, spec, par);
    }
    return 0.0;
}

void step(LoewnerState& st, double dr, double dW, double dt, double eps) {
    const double W0 = st.W;
    for (auto& p : st.pts) {
        if (p.swallowed && p.rho == 0.0) continue;
        const double d = p.V - W0;
        p.V += 2.0 * dt / d;
        if (!p.swallowed) p.L -= 2.0 * dt / (d * d);
    }
    st.W = W0 + dr * dt + dW;
    st.t += dt;
    for (auto& p : st.pts) {
        if (p.swallowed) continue;
        if (p.side * (p.V - st.W) < eps) {
            p.swallowed = true;
            p.t_swallow = st.t;
        }
    }
}

double colliding_rho(const LoewnerState& st, double eps) {
    double s = 0.0;
    for (const auto& p : st.pts)
        if (p.rho != 0.0 && p.side * (p.V - st.W) < eps) s += p.rho;
    return s;
}

bool continuation_threshold_reached(const LoewnerState& st, double eps) { return colliding_rho(st, eps) <= -2.0; }

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::Horizon: return "horizon";
        case StopReason::Threshold: return "threshold";
        case StopReason::Swallow: return "swallow";
        case StopReason::Predicate: return "predicate";
        case StopReason::MaxSteps: return "max_steps";
    }
    return "?";
}

double choose_step(const LoewnerState& st, const StepControl& ctl) {
    double g2 = kInfinity;
    for (const auto& p : st.pts) {
        if (p.swallowed && p.rho == 0.0) continue;
        const double g = p.V - st.W;
        g2 = std::min(g2, g * g);
    }
    const double lo = ctl.dt * ctl.min_factor;
    if (ctl.coarsen) {
        if (!std::isfinite(g2)) return ctl.dt;
        const double h = ctl.dt * g2 / (ctl.gap_ref * ctl.gap_ref);
        return std::clamp(h, lo, ctl.dt * ctl.max_factor);
    }
    double h = ctl.dt;
    if (ctl.refine)
        while (g2 < 100.0 * h && h > lo) h /= 10.0;
    return std::max(h, lo);
}

RunResult run_chain(const DriverSpec& spec, const std::vector<double>& passive, const StepControl& ctl,
                    const RunOptions& opt, Rng& rng) {
    RunResult res;
    res.state = initial_state(spec, passive);
    LoewnerState& st = res.state;
    const bool has_params = spec.kind == DriverKind::Hsle;
    const Params par = has_params ? Params::make(spec.kappa, spec.nu) : Params{};
    const double sk = std::sqrt(spec.kappa);
    std::normal_distribution<double> normal(0.0, 1.0);
    if (opt.record) {
        res.path.dt = ctl.dt;
        res.path.driver = spec.describe();
        res.path.t.push_back(0.0);
        res.path.W.push_back(st.W);
    }
    std::vector<char> stop_flag(st.pts.size(), 0);
    for (int lab : opt.stop_on_swallow) stop_flag.at(st.index_of(lab)) = 1;

    res.reason = StopReason::Horizon;
    while (st.t < opt.horizon) {
        if (res.steps >= opt.max_steps) {
            res.reason = StopReason::MaxSteps;
            break;
        }
        double h = choose_step(st, ctl);
        if (st.t + h > opt.horizon) h = opt.horizon - st.t;
        const double dr = drift(st, spec, par);
        const double dW = sk * std::sqrt(h) * normal(rng);
        step(st, dr, dW, h, ctl.eps);
        ++res.steps;
        if (opt.record) {
            res.path.t.push_back(st.t);
            res.path.W.push_back(st.W);
        }
        if (continuation_threshold_reached(st, ctl.eps)) {
            res.reason = StopReason::Threshold;
            break;
        }
        for (size_t i = 0; i < st.pts.size() && res.stop_label < 0; ++i) {
            const auto& p = st.pts[i];
            if (stop_flag[i] && p.swallowed && p.t_swallow == st.t) {
                res.reason = StopReason::Swallow;
                res.stop_label = p.label;
            }
        }
        if (res.stop_label >= 0) break;
        // force points with rho > -2 keep following the rightmost hull image
        for (auto& p : st.pts)
            if (p.swallowed && p.rho != 0.0 && p.side * (p.V - st.W) < ctl.eps) p.V = st.W + p.side * ctl.eps;
        if (opt.stop_when && opt.stop_when(st)) {
            res.reason = StopReason::Predicate;
            break;
        }
    }
    return res;
}

DrivingPath sample_path(const DriverSpec& spec, double T, double dt, std::uint64_t seed, StopReason* reason) {
    Rng rng = make_stream(seed, 0);
    StepControl ctl;
    ctl.dt = dt;
    RunOptions opt;
    opt.horizon = T;
    opt.record = true;
    RunResult r = run_chain(spec, {}, ctl, opt, rng);
    r.path.seed = seed;
    if (reason) *reason = r.reason;
    return r.path;
}

namespace {

using cplx = std::complex<double>;

// inverse of z -> W + sqrt((z - W)^2 + 4 dt), landing in the closed upper half-plane
cplx slit_inverse(cplx w, double W, double dt) {
    const cplx u = w - W;
    cplx s = std::sqrt(u * u - 4.0 * dt);
    if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() * u.real() < 0.0)) s = -s;
    return W + s;
}

}  // namespace

Trace trace_from_path(const DrivingPath& path, int stride) {
    Trace tr;
    const size_t n = path.W.size();
    if (n == 0) return tr;
    if (stride < 1) stride = 1;
    tr.t.push_back(path.t[0]);
    tr.z.emplace_back(path.W[0], 0.0);
    for (size_t k = stride; k < n; k += stride) {
        cplx w(path.W[k], 0.0);
        for (size_t j = k; j >= 1; --j) w = slit_inverse(w, path.W[j], path.t[j] - path.t[j - 1]);
        tr.t.push_back(path.t[k]);
        tr.z.push_back(w);
    }
    return tr;
}

bool polyline_self_intersects(const Trace& tr) {
    const size_t n = tr.z.size();
    auto orient = [](cplx a, cplx b, cplx c) {
        const double v = (b.real() - a.real()) * (c.imag() - a.imag()) - (b.imag() - a.imag()) * (c.real() - a.real());
        return (v > 0) - (v < 0);
    };
    for (size_t i = 0; i + 1 < n; ++i) {
        for (size_t j = i + 2; j + 1 < n; ++j) {
            const cplx a = tr.z[i], b = tr.z[i + 1], c = tr.z[j], d = tr.z[j + 1];
            if (orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0) return true;
        }
    }
    return false;
}

DrivingPath rescale_path(const DrivingPath& path, double lambda) {
    DrivingPath out = path;
    for (auto& t : out.t) t *= lambda * lambda;
    for (auto& w : out.W) w *= lambda;
    out.dt *= lambda * lambda;
    return out;
}

}  // namespace hsle
