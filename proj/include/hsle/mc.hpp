#pragma once

#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace hsle {

struct MCEstimate {
    double mean = 0.0;
    double se = 0.0;  // sample std / sqrt(n)
    long n = 0;
};

MCEstimate estimate_from(const std::vector<double>& xs);
// |a - b| / sqrt(se_a^2 + se_b^2)
double z_score(const MCEstimate& a, const MCEstimate& b);
double z_score(const MCEstimate& a, double target);

struct MCConfig {
    long n_paths = 1000;
    double dt = 1e-4;
    double epsilon_target = 1e-4;
    std::uint64_t seed = 20240917ULL;
    int max_recursion_depth = 4;
    int workers = 1;

    void validate() const;
};

using Rng = std::mt19937_64;

// Independent generator for (seed, stream); does not depend on how streams are split across workers.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);
std::uint64_t default_seed();  // HSLE_SEED environment variable, else a fixed constant

int resolve_workers(int requested);

// out[i] = f(i); chunks of indices run on `workers` threads. f must be thread-safe.
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, int workers, F&& f) {
    std::vector<R> out(n);
    workers = resolve_workers(workers);
    if (workers <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace hsle
