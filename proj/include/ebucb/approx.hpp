#ifndef EBUCB_APPROX_HPP
#define EBUCB_APPROX_HPP

#include <optional>
#include <string>

#include "ebucb/agents.hpp"
#include "ebucb/bandit.hpp"
#include "ebucb/dist.hpp"

namespace ebucb {

/// How the approximate posterior Q_{t,j} is derived from the exact one.
struct ApproxScheme {
    enum class Kind { Exact, Mixture, TsAdversary, UcbAdversary };

    Kind kind = Kind::Exact;
    // Mixture: (1-w) Beta(a,b) + w Beta(gamma_scale*a, gamma_scale*b)
    double w = 0.0;
    double gamma_scale = 1.0;
    // Adversaries: per-step reweighting level, > 1
    double r = 2.0;

    static ApproxScheme exact();
    static ApproxScheme mixture(double w, double gamma_scale);
    static ApproxScheme ts_adversary(double r);
    static ApproxScheme ucb_adversary(double r);

    std::string name() const;
};

struct DivergenceBudget {
    double epsilon;  // > 0
    double alpha1;   // > 1
    double alpha2;   // < 0
};

/// Builds Q_{t,arm} from the posterior state after t steps. The schedule is
/// required for the UCB adversary, whose breakpoint is the gamma_{t+1}
/// quantile of the optimal arm's exact posterior; when that level is 0 the
/// construction degenerates and the exact posterior is returned.
/// Adversarial schemes require K = 2 and treat arm 0 as optimal.
DistPtr approx_posterior(const ApproxScheme& scheme, const PosteriorState& state,
                         int t, int arm,
                         const QuantileSchedule* schedule = nullptr);

/// Largest admissible adversary level for a single-divergence budget:
/// (eps alpha (alpha-1) + 1)^(-1/alpha) for alpha != 0, e^eps for alpha = 0,
/// unbounded (nullopt) when eps alpha (alpha-1) + 1 <= 0. Requires alpha < 1.
std::optional<double> max_adversary_r(double epsilon, double alpha);

struct BudgetReport {
    double d_alpha1 = 0.0;
    double d_alpha2 = 0.0;
    bool d_alpha1_infinite = false;
    bool d_alpha2_infinite = false;
    bool within = false;
};

/// Numerically checks D_alpha1(Q,Pi) <= eps and D_alpha2(Q,Pi) <= eps for
/// the scheme's posterior at the given state.
BudgetReport verify_budget(const ApproxScheme& scheme, const PosteriorState& state,
                           int t, int arm, const DivergenceBudget& budget,
                           double tol, const QuantileSchedule* schedule = nullptr);

/// Single-divergence variant for the adversaries' alpha < 1 guarantee;
/// reports the one measured divergence in both slots.
BudgetReport verify_budget(const ApproxScheme& scheme, const PosteriorState& state,
                           int t, int arm, double alpha, double epsilon,
                           double tol, const QuantileSchedule* schedule = nullptr);

/// Analytic linear-regret slope floor for the Thompson-sampling adversary:
/// (mu_1 - mu_2) (1/2)(1 - 1/r). Requires K = 2.
double adversary_slope_floor(const BernoulliEnv& env, double r);

/// Smallest t with gamma_t > 1/r (strict); nullopt when never reached on
/// [1, horizon].
std::optional<int> ucb_adversary_switch_time(const QuantileSchedule& schedule,
                                             double r);

} // namespace ebucb

#endif
