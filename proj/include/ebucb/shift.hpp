#ifndef EBUCB_SHIFT_HPP
#define EBUCB_SHIFT_HPP

#include <memory>

#include "ebucb/dist.hpp"

namespace ebucb {

struct ShiftBoundParams {
    double gamma;    // quantile level in (0,1)
    double epsilon;  // divergence budget, > 0
    double alpha;    // must lie outside [0,1]
};

struct ShiftFactors {
    double m_eps_alpha;  // (eps alpha (alpha-1) + 1)^(1/(1-alpha))
    double alpha_tilde;  // alpha / (alpha-1)
};

/// Closed-form factors M and alpha-tilde for alpha outside [0,1].
ShiftFactors shift_factor(double epsilon, double alpha);

/// Upper bound on the quantile shift for alpha > 1:
///   delta <= 1 - gamma - M (1-gamma)^alpha_tilde.
double shift_upper_bound(const ShiftBoundParams& p);

/// Lower bound on the quantile shift for alpha < 0 (same closed form).
double shift_lower_bound(const ShiftBoundParams& p);

/// Measured shift delta = F2(R1(gamma)) - gamma, in [-gamma, 1-gamma].
double measure_shift(const UnivariateDistribution& p1,
                     const UnivariateDistribution& p2, double gamma);

/// Two-piece reweighting of p1 that attains shift exactly delta at level
/// gamma: density scaled by (gamma+delta)/gamma below R1(gamma) and by
/// (1-gamma-delta)/(1-gamma) above it.
std::shared_ptr<const PiecewiseReweighted> extremal_pair(DistPtr p1, double gamma,
                                                         double delta);

/// Divergence of the extremal pair in closed form:
///   g(delta) = (gamma ((gamma+delta)/gamma)^(1-alpha)
///             + (1-gamma) ((1-gamma-delta)/(1-gamma))^(1-alpha) - 1)
///             / (alpha (alpha-1)).
/// At the endpoints the convention 0^(1-alpha) applies (0 for alpha<1,
/// +infinity for alpha>1).
double g_of_delta(double gamma, double delta, double alpha);

} // namespace ebucb

#endif
