#include "hsle/mc.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "hsle/error.hpp"

namespace hsle {

MCEstimate estimate_from(const std::vector<double>& xs) {
    MCEstimate e;
    e.n = static_cast<long>(xs.size());
    if (xs.empty()) return e;
    double mean = 0.0, m2 = 0.0;
    long k = 0;
    for (double x : xs) {
        ++k;
        const double d = x - mean;
        mean += d / k;
        m2 += d * (x - mean);
    }
    e.mean = mean;
    e.se = k > 1 ? std::sqrt(m2 / (k - 1) / k) : 0.0;
    return e;
}

double z_score(const MCEstimate& a, const MCEstimate& b) {
    const double s = std::sqrt(a.se * a.se + b.se * b.se);
    const double d = a.mean - b.mean;
    if (s == 0.0) return d == 0.0 ? 0.0 : INFINITY;
    return d / s;
}

double z_score(const MCEstimate& a, double target) {
    const double d = a.mean - target;
    if (a.se == 0.0) return d == 0.0 ? 0.0 : INFINITY;
    return d / a.se;
}

void MCConfig::validate() const {
    if (n_paths < 100) fail(ErrorKind::Parameter, "MCConfig: n_paths must be at least 100");
    if (!(dt > 0.0 && dt <= 1e-3)) fail(ErrorKind::Parameter, "MCConfig: dt must lie in (0, 1e-3]");
    if (!(epsilon_target > 0.0 && epsilon_target <= 1e-3))
        fail(ErrorKind::Parameter, "MCConfig: epsilon_target must lie in (0, 1e-3]");
    if (max_recursion_depth < 0) fail(ErrorKind::Parameter, "MCConfig: negative recursion depth");
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x68534c45u};
    return Rng(seq);
}

std::uint64_t default_seed() {
    if (const char* s = std::getenv("HSLE_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
        }
    }
    return 20240917ULL;
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

}  // namespace hsle
