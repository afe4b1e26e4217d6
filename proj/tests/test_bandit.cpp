#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ebucb/bandit.hpp"

using namespace ebucb;

TEST_CASE("environment basics") {
    const BernoulliEnv env({0.7, 0.3, 0.5});
    CHECK(env.num_arms() == 3);
    CHECK(env.best_mean() == doctest::Approx(0.7));
    CHECK(env.regret_increment(0) == doctest::Approx(0.0));
    CHECK(env.regret_increment(1) == doctest::Approx(0.4));
    CHECK(env.regret_increment(2) == doctest::Approx(0.2));

    CHECK_THROWS_AS(BernoulliEnv({}), std::invalid_argument);
    CHECK_THROWS_AS(BernoulliEnv({0.5, 1.5}), std::invalid_argument);

    Rng rng(3);
    CHECK_THROWS_AS(env.pull(3, rng), std::out_of_range);
    CHECK_THROWS_AS(env.regret_increment(-1), std::out_of_range);
}

TEST_CASE("pulls are deterministic and hit the mean") {
    const BernoulliEnv env({0.7, 0.3});
    Rng a(5), b(5);
    for (int i = 0; i < 20; ++i) CHECK(env.pull(0, a) == env.pull(0, b));

    Rng rng(123);
    const int n = 200000;
    long sum = 0;
    for (int i = 0; i < n; ++i) sum += env.pull(0, rng);
    CHECK(std::fabs(sum / double(n) - 0.7) < 0.005);
}

TEST_CASE("posterior state tracks sufficient statistics") {
    PosteriorState st(2);
    CHECK(st.total_pulls() == 0);
    auto prior = st.exact_posterior(0);
    CHECK(prior.a == doctest::Approx(1.0));
    CHECK(prior.b == doctest::Approx(1.0));

    st.update(0, 1);
    st.update(0, 1);
    st.update(0, 0);
    st.update(1, 0);
    CHECK(st.total_pulls() == 4);
    CHECK(st.pulls(0) == 3);
    CHECK(st.successes(0) == 2);

    auto p0 = st.exact_posterior(0);
    CHECK(p0.a == doctest::Approx(3.0));
    CHECK(p0.b == doctest::Approx(2.0));
    auto p1 = st.exact_posterior(1);
    CHECK(p1.a == doctest::Approx(1.0));
    CHECK(p1.b == doctest::Approx(2.0));

    CHECK_THROWS_AS(st.update(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(st.update(5, 1), std::out_of_range);
}
