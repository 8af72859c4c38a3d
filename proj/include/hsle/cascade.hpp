#pragma once

#include <vector>

#include "hsle/geometry.hpp"
#include "hsle/link_patterns.hpp"
#include "hsle/mc.hpp"
#include "hsle/special_fn.hpp"

namespace hsle {

struct CascadeStats {
    long accepted = 0;
    long rejected = 0;   // a marked point was swallowed before completion
    long unfinished = 0;  // step budget exhausted
};

// H(x_a, x_b)^h E[Z_R(D_R) Z_L(D_L) 1_E] for the k-th link of alpha (1-based, in alpha.links order).
// Sub-patterns with N <= 2 use closed forms; larger ones are estimated by a nested cascade.
MCEstimate estimate_pure_Z(const Params& par, const LinkPattern& alpha, const MarkedPoints& pts, int k,
                           const MCConfig& cfg, CascadeStats* stats = nullptr);

struct SymmetryRow {
    int k = 0;
    Link link;
    MCEstimate estimate;
    CascadeStats stats;
    double bound = 0.0;  // B_alpha at the points
};

struct SymmetryPair {
    int k1 = 0, k2 = 0;
    double z = 0.0;
};

struct SymmetryReport {
    std::vector<SymmetryRow> rows;
    std::vector<SymmetryPair> pairs;
    double max_abs_z = 0.0;
    bool bound_ok = true;  // every estimate <= B_alpha (1 + 3 relative stderr)
};

SymmetryReport symmetry_report(const Params& par, const LinkPattern& alpha, const MarkedPoints& pts, const MCConfig& cfg);

}  // namespace hsle
