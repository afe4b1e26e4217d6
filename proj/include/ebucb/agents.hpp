#ifndef EBUCB_AGENTS_HPP
#define EBUCB_AGENTS_HPP

#include <vector>

#include "ebucb/dist.hpp"
#include "ebucb/rng.hpp"

namespace ebucb {

/// Quantile sequence gamma_t = 1 - 1/(t^zeta (ln T)^c), clamped at 0.
struct QuantileSchedule {
    double zeta = 2.0;  // exponent on t
    double c = 0.0;     // exponent on ln T
    int horizon = 1;    // T

    double gamma(int t) const;
};

double gamma_of_t(const QuantileSchedule& schedule, int t);

/// Thompson sampling: one draw per arm, argmax, uniform-random tie break.
int select_thompson(const std::vector<const UnivariateDistribution*>& posteriors,
                    Rng& rng);

/// EBUCB: argmax over gamma_t-quantiles of the (approximate) posteriors.
int select_ebucb(const std::vector<const UnivariateDistribution*>& posteriors,
                 int t, const QuantileSchedule& schedule, Rng& rng);

/// BUCB is EBUCB with zeta = 1.
int select_bucb(const std::vector<const UnivariateDistribution*>& posteriors,
                int t, double c, int horizon, Rng& rng);

/// Dominant log(T) regret coefficient predicted for the two-sided divergence
/// budget: sum over sub-optimal arms of
///   gap * (1+xi) (alpha1~/alpha2~) / d(mu_j, mu_best).
double theoretical_log_coefficient(const std::vector<double>& mu, double alpha1,
                                   double alpha2, double xi);

} // namespace ebucb

#endif
