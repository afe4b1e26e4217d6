#include "ebucb/bandit.hpp"

#include <algorithm>
#include <stdexcept>

namespace ebucb {

BernoulliEnv::BernoulliEnv(std::vector<double> mu) : mu_(std::move(mu)) {
    if (mu_.size() < 2) {
        throw std::invalid_argument("BernoulliEnv: need at least two arms");
    }
    for (double m : mu_) {
        if (m < 0.0 || m > 1.0) {
            throw std::invalid_argument("BernoulliEnv: means must lie in [0,1]");
        }
    }
    best_ = *std::max_element(mu_.begin(), mu_.end());
}

void BernoulliEnv::check_arm(int arm) const {
    if (arm < 0 || arm >= num_arms()) {
        throw std::out_of_range("BernoulliEnv: arm index out of range");
    }
}

int BernoulliEnv::pull(int arm, Rng& rng) const {
    check_arm(arm);
    return rng.bernoulli(mu_[arm]) ? 1 : 0;
}

double BernoulliEnv::regret_increment(int arm) const {
    check_arm(arm);
    return best_ - mu_[arm];
}

PosteriorState::PosteriorState(int num_arms)
    : s_(num_arms, 0), n_(num_arms, 0) {
    if (num_arms < 1) {
        throw std::invalid_argument("PosteriorState: need at least one arm");
    }
}

void PosteriorState::update(int arm, int reward) {
    if (reward != 0 && reward != 1) {
        throw std::invalid_argument("PosteriorState: reward must be 0 or 1");
    }
    s_.at(arm) += reward;
    n_.at(arm) += 1;
    total_ += 1;
}

BetaParams PosteriorState::exact_posterior(int arm) const {
    const int s = s_.at(arm);
    const int n = n_.at(arm);
    return BetaParams{1.0 + s, 1.0 + (n - s)};
}

} // namespace ebucb
