#include "hsle/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hsle/error.hpp"
#include "hsle/loewner.hpp"
#include "hsle/partition_fn.hpp"

namespace hsle {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Sample {
    double value = 0.0;
    int status = 0;  // 0 accepted, 1 rejected, 2 unfinished
};

MCEstimate cascade(const Params& par, const LinkPattern& alpha, const MarkedPoints& pts, int k, const MCConfig& cfg,
                   int depth, std::uint64_t stream_base, CascadeStats* stats);

// log Z_beta from the logs of consecutive gaps; nested cascade above N = 2
double log_sub_Z(const Params& par, const LinkPattern& beta, const std::vector<double>& log_gaps, const MCConfig& cfg,
                 int depth, std::uint64_t seed) {
    if (beta.N <= 2) return log_pure_Z_gaps(par, beta, log_gaps);
    std::vector<double> xs{0.0};
    for (double lg : log_gaps) xs.push_back(xs.back() + std::exp(lg));
    MCConfig inner = cfg;
    inner.n_paths = std::max(100L, cfg.n_paths / 10);
    inner.seed = seed;
    inner.workers = 1;
    const MCEstimate e = cascade(par, beta, xs, 1, inner, depth + 1, 0, nullptr);
    return e.mean > 0.0 ? std::log(e.mean) : -INFINITY;
}

MCEstimate cascade(const Params& par, const LinkPattern& alpha, const MarkedPoints& pts, int k, const MCConfig& cfg,
                   int depth, std::uint64_t stream_base, CascadeStats* stats) {
    if (depth > cfg.max_recursion_depth)
        fail(ErrorKind::RecursionDepth, "estimate_pure_Z: recursion depth " + std::to_string(depth) + " exceeded");
    const int N = alpha.N;
    if (static_cast<int>(pts.size()) != 2 * N) fail(ErrorKind::Parameter, "estimate_pure_Z: point count mismatch");
    if (k < 1 || k > N) fail(ErrorKind::Parameter, "estimate_pure_Z: link index out of range");
    require_increasing(pts, "estimate_pure_Z");
    for (double x : pts)
        if (!std::isfinite(x)) fail(ErrorKind::Domain, "estimate_pure_Z: points must be finite");

    const Link link = alpha.links[k - 1];
    const int a = link.first, b = link.second;
    const double xa = pts[a - 1], xb = pts[b - 1];
    const double h = par.h;
    const double log_H = -2.0 * std::log(xb - xa);
    if (N == 1) {
        MCEstimate e;
        e.mean = std::exp(h * log_H);
        e.n = cfg.n_paths;
        if (stats) stats->accepted += cfg.n_paths;
        return e;
    }
    const Split sp = split(alpha, link);

    // passive points in original index order; remember where each one sits
    std::vector<double> passive;
    std::vector<int> inside;  // 1 if strictly between a and b
    for (int i = 1; i <= 2 * N; ++i) {
        if (i == a || i == b) continue;
        passive.push_back(pts[i - 1]);
        inside.push_back(a < i && i < b);
    }
    const DriverSpec spec = target_change_driver(par.kappa, xa, xb);
    const double rho = spec.forces[0].rho;
    const double sk = std::sqrt(par.kappa);
    const long max_steps = static_cast<long>(400.0 / cfg.dt);
    const double eps_t = cfg.epsilon_target;
    // for kappa <= 4 a gap never closes; only a non-representable one ends the path
    const bool can_swallow = par.kappa > 4.0;
    const double eps_sw = kSwallowEps * eps_t;
    constexpr double kTinyGap = 1e-250;
    const size_t m = passive.size();

    // group of each passive point: 0 left of x_a, 1 inside (x_a, x_b), 2 right of x_b
    std::vector<int> group(m);
    for (size_t j = 0; j < m; ++j) group[j] = inside[j] ? 1 : (passive[j] < xa ? 0 : 2);

    // Euler scheme for the chain toward x_b in gap coordinates X_j = g(x_j) - W. Consecutive points of
    // a group also carry log(g(x_{j+1}) - g(x_j)): images get exponentially close when the curve
    // closes off the component that holds them.
    const auto samples = parallel_map<Sample>(cfg.n_paths, cfg.workers, [&](std::size_t i) {
        Rng rng = make_stream(cfg.seed, stream_base + i);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> X(m), L(m, 0.0), logd(m, 0.0);
        for (size_t j = 0; j < m; ++j) {
            X[j] = passive[j] - xa;
            if (j > 0 && group[j] == group[j - 1]) logd[j] = std::log(passive[j] - passive[j - 1]);
        }
        double Xb = xb - xa;
        Sample s;
        s.status = 2;
        for (long step = 0; step < max_steps; ++step) {
            // complete once x_b is close to W relative to every point outside (x_a, x_b); a near pinch
            // against the outer boundary has to resolve first
            double outer = xb - xa;
            double g = Xb;
            for (size_t j = 0; j < m; ++j) {
                g = std::min(g, std::fabs(X[j]));
                if (group[j] != 1) outer = std::min(outer, std::fabs(X[j]));
            }
            if (Xb < eps_t * outer) {
                s.status = 0;
                break;
            }
            const double hs = cfg.dt * g * g;
            for (size_t j = 0; j < m; ++j) {
                L[j] -= 2.0 * hs / (X[j] * X[j]);
                if (j > 0 && group[j] == group[j - 1]) logd[j] -= 2.0 * hs / (X[j - 1] * X[j]);
            }
            const double dW = -rho / Xb * hs + sk * std::sqrt(hs) * normal(rng);
            Xb += 2.0 * hs / Xb - dW;
            bool hit = false;
            for (size_t j = 0; j < m; ++j) {
                X[j] += 2.0 * hs / X[j] - dW;
                const double gap = group[j] == 0 ? -X[j] : X[j];
                if (gap < (can_swallow ? eps_sw : kTinyGap)) hit = true;
            }
            if (hit) {
                s.status = can_swallow ? 1 : 2;
                break;
            }
        }
        if (s.status != 0) return s;
        // sub-patterns see only consecutive gaps. The inner group is one block; the outer side joins the
        // last left point to the first right point across W.
        std::vector<double> gr, gl;
        double log_v = h * log_H;
        int last_left = -1;
        for (size_t j = 0; j < m; ++j) {
            log_v += h * L[j];
            const bool chained = j > 0 && group[j] == group[j - 1];
            if (group[j] == 1) {
                if (chained) gr.push_back(logd[j]);
            } else if (chained) {
                gl.push_back(logd[j]);
            } else if (group[j] == 2 && last_left >= 0) {
                gl.push_back(std::log(X[j] - X[last_left]));
            }
            if (group[j] == 0) last_left = static_cast<int>(j);
        }
        const std::uint64_t sub = mix(cfg.seed ^ mix(stream_base + i) ^ static_cast<std::uint64_t>(depth));
        log_v += log_sub_Z(par, sp.right, gr, cfg, depth, sub);
        log_v += log_sub_Z(par, sp.left, gl, cfg, depth, mix(sub));
        s.value = std::exp(log_v);
        return s;
    });

    std::vector<double> xs;
    xs.reserve(samples.size());
    CascadeStats local;
    for (const Sample& s : samples) {
        if (s.status == 0)
            ++local.accepted;
        else if (s.status == 1)
            ++local.rejected;
        else
            ++local.unfinished;
        // rejected paths contribute 0 through the indicator
        if (s.status != 2) xs.push_back(s.value);
    }
    if (stats) {
        stats->accepted += local.accepted;
        stats->rejected += local.rejected;
        stats->unfinished += local.unfinished;
    }
    if (local.accepted == 0) fail(ErrorKind::DegenerateEstimate, "estimate_pure_Z: every sample was rejected");
    return estimate_from(xs);
}

}  // namespace

MCEstimate estimate_pure_Z(const Params& par, const LinkPattern& alpha, const MarkedPoints& pts, int k,
                           const MCConfig& cfg, CascadeStats* stats) {
    cfg.validate();
    if (!(par.kappa > 0.0 && par.kappa <= 6.0)) fail(ErrorKind::Parameter, "estimate_pure_Z: kappa must lie in (0,6]");
    if (!alpha.valid()) fail(ErrorKind::Parameter, "estimate_pure_Z: invalid link pattern");
    return cascade(par, alpha, pts, k, cfg, 0, 0, stats);
}

SymmetryReport symmetry_report(const Params& par, const LinkPattern& alpha, const MarkedPoints& pts, const MCConfig& cfg) {
    cfg.validate();
    if (!(par.kappa > 0.0 && par.kappa <= 6.0)) fail(ErrorKind::Parameter, "symmetry_report: kappa must lie in (0,6]");
    SymmetryReport rep;
    const double bound = bound_B_alpha(par, alpha, pts);
    for (int k = 1; k <= alpha.N; ++k) {
        SymmetryRow row;
        row.k = k;
        row.link = alpha.links[k - 1];
        row.estimate = cascade(par, alpha, pts, k, cfg, 0, static_cast<std::uint64_t>(k) << 40, &row.stats);
        row.bound = bound;
        const double rel = row.estimate.mean > 0 ? row.estimate.se / row.estimate.mean : 0.0;
        if (row.estimate.mean > bound * (1.0 + 3.0 * rel)) rep.bound_ok = false;
        rep.rows.push_back(row);
    }
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        for (size_t j = i + 1; j < rep.rows.size(); ++j) {
            const double z = z_score(rep.rows[i].estimate, rep.rows[j].estimate);
            rep.pairs.push_back({rep.rows[i].k, rep.rows[j].k, z});
            rep.max_abs_z = std::max(rep.max_abs_z, std::fabs(z));
        }
    }
    return rep;
}

}  // namespace hsle
