#include <doctest.h>

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "ebucb/approx.hpp"
#include "ebucb/divergence.hpp"

using namespace ebucb;

namespace {
PosteriorState warm_state() {
    PosteriorState st(2);
    // arm 0: 12/16 successes; arm 1: 4/14
    for (int i = 0; i < 12; ++i) st.update(0, 1);
    for (int i = 0; i < 4; ++i) st.update(0, 0);
    for (int i = 0; i < 4; ++i) st.update(1, 1);
    for (int i = 0; i < 10; ++i) st.update(1, 0);
    return st;
}
} // namespace

TEST_CASE("scheme factories and names") {
    CHECK(ApproxScheme::exact().name() == "exact");
    CHECK(ApproxScheme::mixture(0.9, 0.5).name() == "mixture");
    CHECK(ApproxScheme::ts_adversary(1.5).name() == "ts-adversary");
    CHECK(ApproxScheme::ucb_adversary(1.5).name() == "ucb-adversary");

    CHECK_THROWS_AS(ApproxScheme::mixture(1.1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ApproxScheme::mixture(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ApproxScheme::ts_adversary(1.0), std::invalid_argument);
    CHECK_THROWS_AS(ApproxScheme::ucb_adversary(0.5), std::invalid_argument);
}

TEST_CASE("exact and mixture posteriors") {
    const auto st = warm_state();
    const auto exact = approx_posterior(ApproxScheme::exact(), st, st.total_pulls(), 0);
    const BetaDist ref(st.exact_posterior(0));
    CHECK(exact->cdf(0.6) == doctest::Approx(ref.cdf(0.6)).epsilon(1e-12));

    const auto mix =
        approx_posterior(ApproxScheme::mixture(0.9, 0.5), st, st.total_pulls(), 0);
    const BetaDist shrunk(BetaParams{0.5 * 13.0, 0.5 * 5.0});
    CHECK(mix->pdf(0.6) ==
          doctest::Approx(0.1 * ref.pdf(0.6) + 0.9 * shrunk.pdf(0.6)).epsilon(1e-10));

    CHECK_THROWS_AS(approx_posterior(ApproxScheme::exact(), st, 0, 2),
                    std::out_of_range);
}

TEST_CASE("ts adversary reweights the optimal arm around the rival median") {
    const auto st = warm_state();
    const auto scheme = ApproxScheme::ts_adversary(1.25);
    const auto q0 = approx_posterior(scheme, st, st.total_pulls(), 0);
    const auto q1 = approx_posterior(scheme, st, st.total_pulls(), 1);

    const BetaDist ref0(st.exact_posterior(0));
    const BetaDist ref1(st.exact_posterior(1));
    // sub-optimal arm untouched
    CHECK(q1->cdf(0.4) == doctest::Approx(ref1.cdf(0.4)).epsilon(1e-12));

    const double b = ref1.quantile(0.5);
    CHECK(q0->pdf(b + 0.05) ==
          doctest::Approx(ref0.pdf(b + 0.05) / 1.25).epsilon(1e-10));
    CHECK(q0->cdf(b) > ref0.cdf(b));

    PosteriorState three(3);
    CHECK_THROWS_AS(approx_posterior(scheme, three, 0, 0), std::invalid_argument);
}

TEST_CASE("ucb adversary reweights the rival below the scheduled quantile") {
    const auto st = warm_state();
    const auto scheme = ApproxScheme::ucb_adversary(1.25);
    const QuantileSchedule sched{1.0, 0.0, 1000};
    const int t = st.total_pulls();

    const auto q0 = approx_posterior(scheme, st, t, 0, &sched);
    const BetaDist ref0(st.exact_posterior(0));
    CHECK(q0->cdf(0.7) == doctest::Approx(ref0.cdf(0.7)).epsilon(1e-12));

    const auto q1 = approx_posterior(scheme, st, t, 1, &sched);
    const BetaDist ref1(st.exact_posterior(1));
    const double b = ref0.quantile(sched.gamma(t + 1));
    CHECK(q1->pdf(b * 0.5) ==
          doctest::Approx(ref1.pdf(b * 0.5) / 1.25).epsilon(1e-10));
    CHECK(q1->cdf(b) < ref1.cdf(b));

    CHECK_THROWS_AS(approx_posterior(scheme, st, t, 1), std::invalid_argument);

    // gamma_1 = 0 degenerates to the exact posterior
    PosteriorState fresh(2);
    const auto q = approx_posterior(scheme, fresh, 0, 1, &sched);
    CHECK(q->cdf(0.5) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("max adversary level") {
    // alpha = -1: (2 eps + 1)^(1)
    CHECK(max_adversary_r(0.5, -1.0).value() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(max_adversary_r(1.0, 0.0).value() ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-12));
    // alpha in (0,1) with a big budget: unbounded
    CHECK_FALSE(max_adversary_r(5.0, 0.5).has_value());
    CHECK(max_adversary_r(1.0, 0.5).value() ==
          doctest::Approx(std::pow(0.75, -2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(max_adversary_r(0.5, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(max_adversary_r(0.0, -1.0), std::invalid_argument);
}

TEST_CASE("budget verification") {
    const auto st = warm_state();

    // single-divergence compliance at r just below the admissible level
    for (double alpha : {-1.0, 0.0, 0.5}) {
        const double eps = 0.5;
        const double rmax = max_adversary_r(eps, alpha).value();
        const double r = 0.99 * rmax;
        const auto rep = verify_budget(ApproxScheme::ts_adversary(r), st,
                                       st.total_pulls(), 0, alpha, eps, 1e-8);
        CHECK(rep.within);
        CHECK(rep.d_alpha1 <= eps + 1e-6);
    }

    // well past the admissible level the budget must break
    {
        const double rmax = max_adversary_r(0.5, -1.0).value();
        const auto bad = verify_budget(ApproxScheme::ts_adversary(3.0 * rmax), st,
                                       st.total_pulls(), 0, -1.0, 0.5, 1e-8);
        CHECK_FALSE(bad.within);
    }

    const DivergenceBudget budget{0.5, 2.0, -1.0};
    const auto trivial = verify_budget(ApproxScheme::exact(), st,
                                       st.total_pulls(), 0, budget, 1e-8);
    CHECK(trivial.within);
    CHECK(std::fabs(trivial.d_alpha1) < 1e-6);
    CHECK(std::fabs(trivial.d_alpha2) < 1e-6);

    // the adversary cannot satisfy a two-sided budget: the alpha > 1 side blows up
    const auto twosided = verify_budget(ApproxScheme::ts_adversary(1.5), st,
                                        st.total_pulls(), 0, budget, 1e-8);
    CHECK_FALSE(twosided.within);

    CHECK_THROWS_AS(verify_budget(ApproxScheme::exact(), st, 0, 0,
                                  DivergenceBudget{0.5, 0.5, -1.0}, 1e-8),
                    std::invalid_argument);
}

TEST_CASE("adversary slope floor and switch time") {
    const BernoulliEnv env({0.7, 0.3});
    CHECK(adversary_slope_floor(env, 2.0) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK_THROWS_AS(adversary_slope_floor(BernoulliEnv({0.7, 0.3, 0.1}), 2.0),
                    std::invalid_argument);

    // gamma_t = 1 - 1/t crosses 1/r = 1 - 1/t0 strictly at t0 + 1
    const QuantileSchedule sched{1.0, 0.0, 1000};
    for (int t0 : {100, 200, 333}) {
        const double r = t0 / (t0 - 1.0);
        const auto sw = ucb_adversary_switch_time(sched, r);
        REQUIRE(sw.has_value());
        CHECK(*sw == t0 + 1);
    }
    CHECK_FALSE(ucb_adversary_switch_time(QuantileSchedule{1.0, 0.0, 5}, 1.01)
                    .has_value());
}
