#ifndef EBUCB_BANDIT_HPP
#define EBUCB_BANDIT_HPP

#include <cstdint>
#include <vector>

#include "ebucb/dist.hpp"
#include "ebucb/rng.hpp"

namespace ebucb {

/// Bernoulli environment with fixed mean rewards.
class BernoulliEnv {
  public:
    explicit BernoulliEnv(std::vector<double> mu);

    int num_arms() const { return static_cast<int>(mu_.size()); }
    const std::vector<double>& mu() const { return mu_; }
    double best_mean() const { return best_; }

    /// Draws a {0,1} reward for the given arm.
    int pull(int arm, Rng& rng) const;

    /// Pseudo-regret increment max_j mu_j - mu_arm.
    double regret_increment(int arm) const;

  private:
    void check_arm(int arm) const;

    std::vector<double> mu_;
    double best_;
};

/// Per-arm sufficient statistics (successes, pulls) for the Beta posterior.
class PosteriorState {
  public:
    explicit PosteriorState(int num_arms);

    void update(int arm, int reward);

    /// Beta(1 + S, 1 + N - S); the Beta(1,1) prior before any pulls.
    BetaParams exact_posterior(int arm) const;

    int successes(int arm) const { return s_.at(arm); }
    int pulls(int arm) const { return n_.at(arm); }
    int total_pulls() const { return total_; }
    int num_arms() const { return static_cast<int>(n_.size()); }

  private:
    std::vector<int> s_;
    std::vector<int> n_;
    int total_ = 0;
};

/// One replication's cumulative pseudo-regret series plus pull counts.
struct RegretTrace {
    std::uint64_t seed = 0;
    std::vector<double> cum_regret;  // length T
    std::vector<int> pulls;          // length K
};

} // namespace ebucb

#endif
