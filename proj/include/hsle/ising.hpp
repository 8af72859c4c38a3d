#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hsle/loewner.hpp"

namespace hsle {

// ln(1 + sqrt 2) / 2, the self-dual point of the square lattice
inline constexpr double kBetaCritical = 0.44068679350977151262;

enum class Boundary { Plus, Minus, Free };

struct Arc {
    int length = 0;
    Boundary condition = Boundary::Free;
};

// Spins live on the W x H sites (i, j). The boundary ring is the 2W + 2H sites just outside, numbered
// counterclockwise from (0, -1). Arcs cover the ring in order starting at ring index `start`; arc k
// begins at mark k.
struct LatticeDomain {
    int width = 0;
    int height = 0;
    int start = 0;
    std::vector<Arc> arcs;

    int ring_size() const { return 2 * (width + height); }
    std::pair<int, int> ring_site(int r) const;  // lattice coordinates of ring index r
    Boundary ring_condition(int r) const;
    std::vector<int> marks() const;  // ring index where each arc begins
    // corner-lattice vertex shared by ring sites m - 1 and m
    std::pair<int, int> mark_vertex(int k) const;
    void validate() const;

    static LatticeDomain parse(const std::string& text);
    static LatticeDomain load(const std::string& path);
    std::string to_string() const;

    // two arcs: minus from the bottom midpoint counterclockwise to the top midpoint, plus on the rest
    static LatticeDomain dobrushin(int width, int height);
    // four arcs counterclockwise: bottom, right, top, left; junctions sit one site past each corner
    static LatticeDomain quad(int width, int height, Boundary bottom, Boundary right, Boundary top, Boundary left);
};

struct SpinConfig {
    int width = 0, height = 0;
    std::vector<signed char> spins;  // row-major, j * width + i

    int at(int i, int j) const { return spins[static_cast<size_t>(j) * width + i]; }
    signed char& at(int i, int j) { return spins[static_cast<size_t>(j) * width + i]; }
};

struct SamplerOptions {
    double beta = kBetaCritical;
    long steps = 0;  // Wolff cluster steps, raised to thermalization_floor (100 * max(width, height))
};

// Wolff single-cluster dynamics. A cluster that bonds to a frozen boundary site is not flipped.
SpinConfig sample_critical(const LatticeDomain& dom, std::uint64_t seed, const SamplerOptions& opt = {});
long thermalization_floor(const LatticeDomain& dom);
double energy(const SpinConfig& cfg, const LatticeDomain& dom);
// lag autocorrelation of the energy along one Wolff run, lag counted in cluster steps
double energy_autocorrelation(const LatticeDomain& dom, std::uint64_t seed, long lag, long n_samples,
                              double beta = kBetaCritical);

enum class Chirality { TurnLeft, TurnRight };

struct InterfacePath {
    std::vector<std::pair<int, int>> vertices;  // corner lattice; vertex (i, j) is the lower-left corner of site (i, j)
    int start_mark = -1;
    int end_mark = -1;  // -1 when the path stopped on a free arc
    int left_spin = 0;  // spin seen on the left of every step
};

// Interface along the edges of the corner lattice from mark `start_mark` (0-based), with the spin of the ring
// site before the mark on its left.
InterfacePath trace_interface(const SpinConfig& cfg, const LatticeDomain& dom, int start_mark, Chirality chirality);

struct CrossingEvents {
    bool v_minus = false;      // minus 4-path from arc 0 to arc 2
    bool h_plus = false;       // plus 4-path from arc 1 to arc 3
    bool h_plus_star = false;  // plus 8-path from arc 1 to arc 3, the dual of v_minus
};

CrossingEvents crossing_events(const SpinConfig& cfg, const LatticeDomain& dom);

// Vertical-slit zipper on points in the closed upper half-plane; pts[0] must be real. Points that add no
// capacity are skipped and counted. The inverse is trace_from_path.
DrivingPath zipper(const std::vector<std::complex<double>>& pts, long* skipped = nullptr);

// Conformal map of the rectangle [0, W] x [0, H] onto the half-plane through Jacobi sn, followed by the
// Mobius map that sends vertex a to 0 and vertex b to infinity.
class RectangleMap {
public:
    RectangleMap(double width, double height, std::complex<double> a, std::complex<double> b);
    std::complex<double> operator()(std::complex<double> z) const;
    double modulus() const { return k_; }

private:
    std::complex<double> sn_image(std::complex<double> z) const;
    double width_, height_, k_, K_;
    double A_, B_, sign_;
};

// Maps the interface to the half-plane and runs the zipper; at most max_points evenly spaced vertices.
DrivingPath extract_driving(const InterfacePath& path, const LatticeDomain& dom, int max_points = 0,
                            long* skipped = nullptr);

struct KappaEstimate {
    double slope = 0.0;
    double stderr_ = 0.0;
    double t_max = 0.0;  // end of the regression window
    int grid = 0;
};

// Weighted (1/t^2) least-squares slope of Var[W_t] against t over the first quartile of the shortest capacity range.
// The stderr comes from a bootstrap over paths.
KappaEstimate kappa_estimate(const std::vector<DrivingPath>& drivings, std::uint64_t seed = 1, int grid = 24,
                             int bootstrap = 200);

}  // namespace hsle
