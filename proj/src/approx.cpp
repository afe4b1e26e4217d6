#include "ebucb/approx.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ebucb/divergence.hpp"

namespace ebucb {

ApproxScheme ApproxScheme::exact() { return ApproxScheme{}; }

ApproxScheme ApproxScheme::mixture(double w, double gamma_scale) {
    if (w < 0.0 || w > 1.0) {
        throw std::invalid_argument("ApproxScheme: mixture weight must lie in [0,1]");
    }
    if (!(gamma_scale > 0.0)) {
        throw std::invalid_argument("ApproxScheme: gamma_scale must be positive");
    }
    ApproxScheme s;
    s.kind = Kind::Mixture;
    s.w = w;
    s.gamma_scale = gamma_scale;
    return s;
}

ApproxScheme ApproxScheme::ts_adversary(double r) {
    if (!(r > 1.0)) throw std::invalid_argument("ApproxScheme: adversary requires r > 1");
    ApproxScheme s;
    s.kind = Kind::TsAdversary;
    s.r = r;
    return s;
}

ApproxScheme ApproxScheme::ucb_adversary(double r) {
    if (!(r > 1.0)) throw std::invalid_argument("ApproxScheme: adversary requires r > 1");
    ApproxScheme s;
    s.kind = Kind::UcbAdversary;
    s.r = r;
    return s;
}

std::string ApproxScheme::name() const {
    switch (kind) {
        case Kind::Exact:
            return "exact";
        case Kind::Mixture:
            return "mixture";
        case Kind::TsAdversary:
            return "ts-adversary";
        case Kind::UcbAdversary:
            return "ucb-adversary";
    }
    return "unknown";
}

DistPtr approx_posterior(const ApproxScheme& scheme, const PosteriorState& state,
                         int t, int arm, const QuantileSchedule* schedule) {
    if (arm < 0 || arm >= state.num_arms()) {
        throw std::out_of_range("approx_posterior: arm index out of range");
    }
    const BetaParams exact = state.exact_posterior(arm);

    switch (scheme.kind) {
        case ApproxScheme::Kind::Exact:
            return std::make_shared<BetaDist>(exact);

        case ApproxScheme::Kind::Mixture: {
            const double g = scheme.gamma_scale;
            return std::make_shared<BetaMixture>(
                std::vector<double>{1.0 - scheme.w, scheme.w},
                std::vector<BetaParams>{exact,
                                        BetaParams{g * exact.a, g * exact.b}});
        }

        case ApproxScheme::Kind::TsAdversary: {
            if (state.num_arms() != 2) {
                throw std::invalid_argument("approx_posterior: adversaries require K = 2");
            }
            if (arm == 1) return std::make_shared<BetaDist>(exact);
            // Suppress the optimal arm's mass above the sub-optimal arm's
            // posterior median.
            const BetaDist other(state.exact_posterior(1));
            const double b = other.quantile(0.5);
            auto base = std::make_shared<BetaDist>(exact);
            // subnormal mass below b cannot be reweighted at full precision;
            // the exact posterior is then indistinguishable from the target
            if (base->cdf(b) < std::numeric_limits<double>::min()) {
                return base;
            }
            return std::make_shared<PiecewiseReweighted>(
                make_piecewise_left_boost(std::move(base), b, scheme.r));
        }

        case ApproxScheme::Kind::UcbAdversary: {
            if (state.num_arms() != 2) {
                throw std::invalid_argument("approx_posterior: adversaries require K = 2");
            }
            if (schedule == nullptr) {
                throw std::invalid_argument(
                    "approx_posterior: UCB adversary needs a quantile schedule");
            }
            if (arm == 0) return std::make_shared<BetaDist>(exact);
            const double level = gamma_of_t(*schedule, t + 1);
            const BetaDist optimal(state.exact_posterior(0));
            const double b = optimal.quantile(level);
            if (!(b > 0.0) || !(b < 1.0)) {
                // gamma = 0 at the very first step: no reweighting possible
                return std::make_shared<BetaDist>(exact);
            }
            auto base = std::make_shared<BetaDist>(exact);
            return std::make_shared<PiecewiseReweighted>(
                make_piecewise_right_boost(std::move(base), b, scheme.r));
        }
    }
    throw std::logic_error("approx_posterior: unknown scheme");
}

std::optional<double> max_adversary_r(double epsilon, double alpha) {
    if (!(alpha < 1.0)) {
        throw std::invalid_argument("max_adversary_r: requires alpha < 1");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("max_adversary_r: epsilon must be positive");
    }
    if (alpha == 0.0) return std::exp(epsilon);
    const double base = epsilon * alpha * (alpha - 1.0) + 1.0;
    if (base <= 0.0) return std::nullopt;
    return std::pow(base, -1.0 / alpha);
}

BudgetReport verify_budget(const ApproxScheme& scheme, const PosteriorState& state,
                           int t, int arm, const DivergenceBudget& budget,
                           double tol, const QuantileSchedule* schedule) {
    if (!(budget.alpha1 > 1.0) || !(budget.alpha2 < 0.0) || !(budget.epsilon > 0.0)) {
        throw std::invalid_argument(
            "verify_budget: need alpha1 > 1, alpha2 < 0, epsilon > 0");
    }
    const DistPtr q = approx_posterior(scheme, state, t, arm, schedule);
    const BetaDist exact(state.exact_posterior(arm));

    const auto d1 = alpha_divergence(*q, exact, budget.alpha1, tol);
    const auto d2 = alpha_divergence(*q, exact, budget.alpha2, tol);

    BudgetReport report;
    report.d_alpha1 = d1.value;
    report.d_alpha2 = d2.value;
    report.d_alpha1_infinite = d1.is_infinite;
    report.d_alpha2_infinite = d2.is_infinite;
    report.within = !d1.is_infinite && !d2.is_infinite &&
                    d1.value <= budget.epsilon + tol &&
                    d2.value <= budget.epsilon + tol;
    return report;
}

BudgetReport verify_budget(const ApproxScheme& scheme, const PosteriorState& state,
                           int t, int arm, double alpha, double epsilon,
                           double tol, const QuantileSchedule* schedule) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("verify_budget: epsilon must be positive");
    }
    const DistPtr q = approx_posterior(scheme, state, t, arm, schedule);
    const BetaDist exact(state.exact_posterior(arm));
    const auto d = alpha_divergence(*q, exact, alpha, tol);

    BudgetReport report;
    report.d_alpha1 = d.value;
    report.d_alpha2 = d.value;
    report.d_alpha1_infinite = d.is_infinite;
    report.d_alpha2_infinite = d.is_infinite;
    report.within = !d.is_infinite && d.value <= epsilon + tol;
    return report;
}

double adversary_slope_floor(const BernoulliEnv& env, double r) {
    if (env.num_arms() != 2) {
        throw std::invalid_argument("adversary_slope_floor: requires K = 2");
    }
    if (!(r > 1.0)) {
        throw std::invalid_argument("adversary_slope_floor: requires r > 1");
    }
    const double gap = std::fabs(env.mu()[0] - env.mu()[1]);
    return gap * 0.5 * (1.0 - 1.0 / r);
}

std::optional<int> ucb_adversary_switch_time(const QuantileSchedule& schedule,
                                             double r) {
    if (!(r > 1.0)) {
        throw std::invalid_argument("ucb_adversary_switch_time: requires r > 1");
    }
    const double threshold = 1.0 / r;
    for (int t = 1; t <= schedule.horizon; ++t) {
        if (gamma_of_t(schedule, t) > threshold) return t;
    }
    return std::nullopt;
}

} // namespace ebucb
