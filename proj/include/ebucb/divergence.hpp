#ifndef EBUCB_DIVERGENCE_HPP
#define EBUCB_DIVERGENCE_HPP

#include <string>

#include "ebucb/dist.hpp"

namespace ebucb {

enum class DivergenceMethod { DirectIntegral, QuantileRepresentation };

struct DivergenceResult {
    double value = 0.0;
    double estimated_abs_error = 0.0;
    bool is_infinite = false;
    DivergenceMethod method = DivergenceMethod::DirectIntegral;
};

inline constexpr double kDivergenceDefaultTol = 1e-8;

/// Tsallis-form alpha-divergence
///   D_alpha(P1,P2) = (int p1^alpha p2^(1-alpha) dx - 1) / (alpha (alpha-1)),
/// with alpha in {0,1} handled as the KL limits (alpha->1 gives KL(P1,P2),
/// alpha->0 gives KL(P2,P1)). Integrals run over [delta, 1-delta] with
/// delta = 1e-10; divergence to +infinity is detected by the truncated
/// integral exceeding 1e12 or growing as delta shrinks to 1e-12.
DivergenceResult alpha_divergence(const UnivariateDistribution& p1,
                                  const UnivariateDistribution& p2,
                                  double alpha,
                                  double tol = kDivergenceDefaultTol);

/// KL(P1,P2) = int p1 log(p1/p2) dx
DivergenceResult kl_divergence(const UnivariateDistribution& p1,
                               const UnivariateDistribution& p2,
                               double tol = kDivergenceDefaultTol);

/// Same divergence through the quantile representation
///   D_alpha = (int_0^1 (p2(R1(u))/p1(R1(u)))^(1-alpha) du - 1) / (alpha (alpha-1)).
/// Independent evaluation route; used to cross-check the direct integral.
DivergenceResult alpha_divergence_quantile_form(const UnivariateDistribution& p1,
                                                const UnivariateDistribution& p2,
                                                double alpha,
                                                double tol = kDivergenceDefaultTol);

/// Bernoulli point divergence d(p,q) = p log(p/q) + (1-p) log((1-p)/(1-q)),
/// with 0 log 0 = 0 and x log(x/0) = +infinity for x > 0.
double bernoulli_kl(double p, double q);

/// d+(p,q) = d(p,q) when p < q, else 0.
double bernoulli_kl_plus(double p, double q);

} // namespace ebucb

#endif
