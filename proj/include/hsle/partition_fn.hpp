#pragma once

#include <functional>
#include <vector>

#include "hsle/geometry.hpp"
#include "hsle/link_patterns.hpp"
#include "hsle/special_fn.hpp"

namespace hsle {

using ZFun = std::function<double(const std::vector<double>&)>;

double log_z_kappa_nu(const Params& par, double x1, double x2, double x3, double x4);
double z_kappa_nu(const Params& par, double x1, double x2, double x3, double x4);

double pure_Z_N1(const Params& par, double x, double y);
// F(1) for F = 2F1(4/k, 1-4/k, 8/k; .), the ASY normalization of the N=2 functions
double n2_normalization(double kappa);
double pure_Z_N2(const Params& par, const LinkPattern& alpha, double x1, double x2, double x3, double x4);
// closed forms for N <= 2
double pure_Z(const Params& par, const LinkPattern& alpha, const std::vector<double>& xs);
// log of the closed form from the logs of the 2N-1 consecutive gaps; keeps nearly fused pairs exact
double log_pure_Z_gaps(const Params& par, const LinkPattern& alpha, const std::vector<double>& log_gaps);
double bound_B_alpha(const Params& par, const LinkPattern& alpha, const std::vector<double>& xs);

// (k/2) d_i^2 Z + sum_{j != i} (2/(x_j - x_i) d_j Z - 2 w_j/(x_j - x_i)^2 Z), centered differences
double pde_residual(const ZFun& Z, double kappa, const std::vector<double>& weights, int i,
                    const std::vector<double>& xs, double step);
// same, one Richardson level (step and step/2)
double pde_residual_extrapolated(const ZFun& Z, double kappa, const std::vector<double>& weights, int i,
                                 const std::vector<double>& xs, double rel_step = 1e-4);

// Z(xs) / (prod phi'(x_i)^{w_i} Z(phi(xs))), equal to 1 for a covariant Z
double covariance_ratio(const ZFun& Z, const std::vector<double>& weights, const std::vector<double>& xs,
                        const MobiusMap& phi);

// Pair (j, j+1) pinched around its midpoint to separation gap; returns Z / gap^{-2h}.
double asy_ratio(const ZFun& Z, double h, int j, const std::vector<double>& xs, double gap);

double avoid_probability(const Params& par, double x1, double x2, double x3, double x4);

}  // namespace hsle
