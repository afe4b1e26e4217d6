#include "ebucb/agents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ebucb/divergence.hpp"

namespace ebucb {

double QuantileSchedule::gamma(int t) const { return gamma_of_t(*this, t); }

double gamma_of_t(const QuantileSchedule& schedule, int t) {
    if (t < 1 || t > schedule.horizon) {
        throw std::invalid_argument("gamma_of_t: t must lie in [1, horizon]");
    }
    if (!(schedule.zeta > 0.0) || schedule.c < 0.0) {
        throw std::invalid_argument("gamma_of_t: need zeta > 0 and c >= 0");
    }
    double denom = std::pow(static_cast<double>(t), schedule.zeta);
    if (schedule.c > 0.0) {
        if (schedule.horizon < 2) {
            throw std::invalid_argument("gamma_of_t: c > 0 requires horizon >= 2");
        }
        denom *= std::pow(std::log(static_cast<double>(schedule.horizon)), schedule.c);
    }
    return std::max(0.0, 1.0 - 1.0 / denom);
}

namespace {

int argmax_with_random_ties(const std::vector<double>& values, Rng& rng) {
    const double best = *std::max_element(values.begin(), values.end());
    int count = 0;
    for (double v : values) {
        if (v == best) ++count;
    }
    if (count == 1) {
        return static_cast<int>(std::max_element(values.begin(), values.end()) -
                                values.begin());
    }
    std::uint64_t pick = rng.below(static_cast<std::uint64_t>(count));
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] == best) {
            if (pick == 0) return static_cast<int>(i);
            --pick;
        }
    }
    return 0; // unreachable
}

} // namespace

int select_thompson(const std::vector<const UnivariateDistribution*>& posteriors,
                    Rng& rng) {
    if (posteriors.size() < 2) {
        throw std::invalid_argument("select_thompson: need at least two arms");
    }
    std::vector<double> draws(posteriors.size());
    for (std::size_t j = 0; j < posteriors.size(); ++j) {
        draws[j] = posteriors[j]->sample(rng);
    }
    return argmax_with_random_ties(draws, rng);
}

int select_ebucb(const std::vector<const UnivariateDistribution*>& posteriors,
                 int t, const QuantileSchedule& schedule, Rng& rng) {
    if (posteriors.size() < 2) {
        throw std::invalid_argument("select_ebucb: need at least two arms");
    }
    const double g = gamma_of_t(schedule, t);
    std::vector<double> qu(posteriors.size());
    for (std::size_t j = 0; j < posteriors.size(); ++j) {
        qu[j] = posteriors[j]->quantile(g);
    }
    return argmax_with_random_ties(qu, rng);
}

int select_bucb(const std::vector<const UnivariateDistribution*>& posteriors,
                int t, double c, int horizon, Rng& rng) {
    return select_ebucb(posteriors, t, QuantileSchedule{1.0, c, horizon}, rng);
}

double theoretical_log_coefficient(const std::vector<double>& mu, double alpha1,
                                   double alpha2, double xi) {
    if (!(alpha1 > 1.0) || !(alpha2 < 0.0) || !(xi > 0.0)) {
        throw std::invalid_argument(
            "theoretical_log_coefficient: need alpha1 > 1, alpha2 < 0, xi > 0");
    }
    const double best = *std::max_element(mu.begin(), mu.end());
    const double ratio = (alpha1 / (alpha1 - 1.0)) / (alpha2 / (alpha2 - 1.0));
    double coeff = 0.0;
    for (double m : mu) {
        if (m == best) continue;
        coeff += (best - m) * (1.0 + xi) * ratio / bernoulli_kl(m, best);
    }
    int ties = static_cast<int>(std::count(mu.begin(), mu.end(), best));
    if (ties > 1) {
        throw std::invalid_argument(
            "theoretical_log_coefficient: tied optimal means are excluded");
    }
    return coeff;
}

} // namespace ebucb
