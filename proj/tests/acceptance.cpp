#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <thread>
#include <vector>

#include "ebucb/agents.hpp"
#include "ebucb/approx.hpp"
#include "ebucb/divergence.hpp"
#include "ebucb/harness.hpp"
#include "ebucb/rng.hpp"
#include "ebucb/shift.hpp"

using namespace ebucb;

namespace {

void report(int n, const char* name, bool ok) {
    std::printf("criterion %d (%s): %s\n", n, name, ok ? "pass" : "fail");
    std::fflush(stdout);
}

int worker_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 4 : static_cast<int>(hw);
}

PosteriorState random_state(Rng& rng, int max_pulls) {
    PosteriorState st(2);
    for (int arm = 0; arm < 2; ++arm) {
        const int n = 1 + static_cast<int>(rng.below(max_pulls));
        const double p = rng.uniform();
        for (int i = 0; i < n; ++i) st.update(arm, rng.bernoulli(p) ? 1 : 0);
    }
    return st;
}

} // namespace

TEST_CASE("criterion_1_divergence_engine") {
    bool ok = true;
    auto expect = [&](bool cond) {
        ok = ok && cond;
        CHECK(cond);
    };

    const BetaDist uniform(1, 1), linear(2, 1);
    const auto half = alpha_divergence(uniform, linear, 0.5);
    expect(!half.is_infinite);
    expect(std::fabs(half.value - 0.22876383367174654) <= 1e-6);
    const auto kl = kl_divergence(uniform, linear);
    expect(!kl.is_infinite);
    expect(std::fabs(kl.value - 0.30685281944005469) <= 1e-6);

    Rng rng(160101);
    int pairs = 0;
    double worst = 0.0;
    while (pairs < 200) {
        const BetaDist p1(1.0 + 29.0 * rng.uniform(), 1.0 + 29.0 * rng.uniform());
        const BetaDist p2(1.0 + 29.0 * rng.uniform(), 1.0 + 29.0 * rng.uniform());
        const auto direct = alpha_divergence(p1, p2, 0.5);
        const auto quant = alpha_divergence_quantile_form(p1, p2, 0.5);
        expect(!direct.is_infinite && !quant.is_infinite);
        const double diff = std::fabs(direct.value - quant.value);
        worst = std::max(worst, diff);
        expect(diff <= 5e-8);
        ++pairs;
    }
    MESSAGE("dual representation worst disagreement: ", worst);
    report(1, "divergence engine", ok);
    CHECK(ok);
}

TEST_CASE("criterion_2_quantile_shift_bounds") {
    bool ok = true;
    auto expect = [&](bool cond) {
        ok = ok && cond;
        CHECK(cond);
    };

    Rng rng(270201);
    for (int i = 0; i < 500; ++i) {
        auto base = std::make_shared<BetaDist>(1.0 + 9.0 * rng.uniform(),
                                               1.0 + 9.0 * rng.uniform());
        const double gamma = 0.5 + 0.49 * rng.uniform();
        // keep a relative margin so both piecewise factors stay well away
        // from the degenerate endpoints
        const double lo = -0.95 * gamma;
        const double hi = 0.95 * (1.0 - gamma);
        const double delta = lo + (hi - lo) * rng.uniform();
        const auto p2 = extremal_pair(base, gamma, delta);
        const double measured = measure_shift(*base, *p2, gamma);

        const auto da = alpha_divergence(*base, *p2, 2.0, 1e-9);
        expect(!da.is_infinite);
        if (!da.is_infinite) {
            expect(measured <= shift_upper_bound({gamma, da.value, 2.0}) + 1e-8);
            expect(std::fabs(da.value - g_of_delta(gamma, delta, 2.0)) <= 1e-7);
        }
        const auto db = alpha_divergence(*base, *p2, -1.0, 1e-9);
        expect(!db.is_infinite);
        if (!db.is_infinite) {
            expect(measured >= shift_lower_bound({gamma, db.value, -1.0}) - 1e-8);
            expect(std::fabs(db.value - g_of_delta(gamma, delta, -1.0)) <= 1e-7);
        }
    }

    // alpha in (0,1) with epsilon = 1/(-alpha(alpha-1)) = 4: the divergence
    // budget holds yet the shift reaches both ends of its range
    for (double gamma : {0.3, 0.5, 0.8}) {
        for (double delta : {-gamma + 0.01, 1.0 - gamma - 0.01}) {
            auto base = std::make_shared<BetaDist>(1.0, 1.0);
            const auto p2 = extremal_pair(base, gamma, delta);
            const auto d = alpha_divergence(*base, *p2, 0.5, 1e-9);
            expect(!d.is_infinite && d.value <= 4.0 + 1e-8);
            expect(std::fabs(measure_shift(*base, *p2, gamma) - delta) <= 1e-9);
        }
    }
    report(2, "quantile-shift bounds", ok);
    CHECK(ok);
}

TEST_CASE("criterion_3_adversary_budget") {
    bool ok = true;
    auto expect = [&](bool cond) {
        ok = ok && cond;
        CHECK(cond);
    };

    const QuantileSchedule schedule{1.0, 0.0, 1 << 20};
    Rng rng(330301);
    for (double alpha : {-1.0, 0.0, 0.5}) {
        for (double eps : {0.1, 0.5, 1.0}) {
            const auto rmax = max_adversary_r(eps, alpha);
            REQUIRE(rmax.has_value());
            const double r = 0.99 * *rmax;
            REQUIRE(r > 1.0);
            double worst = 0.0;
            for (int i = 0; i < 50; ++i) {
                const auto st = random_state(rng, 200);
                const int t = st.total_pulls();
                const auto ts = verify_budget(ApproxScheme::ts_adversary(r), st,
                                              t, 0, alpha, eps, 1e-8);
                const auto ucb = verify_budget(ApproxScheme::ucb_adversary(r), st,
                                               t, 1, alpha, eps, 1e-8,
                                               &schedule);
                expect(ts.within && ts.d_alpha1 <= eps + 1e-6);
                expect(ucb.within && ucb.d_alpha1 <= eps + 1e-6);
                worst = std::max({worst, ts.d_alpha1, ucb.d_alpha1});
            }
            MESSAGE("alpha=", alpha, " eps=", eps, " r=", r, " worst=", worst);
        }
    }
    report(3, "adversary budget compliance", ok);
    CHECK(ok);
}

TEST_CASE("criterion_4_linear_regret_floor") {
    bool ok = true;

    ExperimentConfig cfg;
    cfg.mu = {0.7, 0.3};
    cfg.horizon = 2000;
    cfg.replications = 20;
    cfg.scheme = ApproxScheme::ts_adversary(2.0);
    cfg.base_seed = 440401;
    const AgentSpec ts{AgentSpec::Kind::ThompsonSampling};

    const auto traces = run_experiment(cfg, ts, worker_count());
    const auto agg = aggregate(traces, ts.name());
    const double slope = regression_slope(agg.mean, 500, 2000);
    const double floor = adversary_slope_floor(BernoulliEnv(cfg.mu), 2.0);
    MESSAGE("measured slope ", slope, ", analytic floor ", floor);
    ok = slope >= 0.9 * floor;
    CHECK(slope >= 0.9 * floor);
    report(4, "linear regret under TS adversary", ok);
    CHECK(ok);
}

TEST_CASE("criterion_5_ucb_switchover") {
    bool ok = true;
    auto expect = [&](bool cond) {
        ok = ok && cond;
        CHECK(cond);
    };

    for (int t0 : {100, 200, 333}) {
        ExperimentConfig cfg;
        cfg.mu = {0.7, 0.3};
        cfg.horizon = 1000;
        cfg.replications = 10;
        cfg.base_seed = 550501;
        const AgentSpec bucb{AgentSpec::Kind::Bucb, 1.0, 0.0};
        // gamma_{T0} = 1/r on the 1 - 1/t schedule
        const double r = 1.0 / bucb.schedule(cfg.horizon).gamma(t0);
        cfg.scheme = ApproxScheme::ucb_adversary(r);

        const auto sw = ucb_adversary_switch_time(bucb.schedule(cfg.horizon), r);
        REQUIRE(sw.has_value());
        expect(*sw == t0 + 1);

        const auto traces = run_experiment(cfg, bucb, worker_count());
        const double gap = 0.4;
        for (const auto& tr : traces) {
            // the sub-optimal arm is captured at every step past T0
            bool captured = true;
            for (int t = t0 + 1; t <= cfg.horizon; ++t) {
                const double inc = tr.cum_regret[t - 1] - tr.cum_regret[t - 2];
                // cumulative sums differ from the gap by ulp-level rounding
                if (std::fabs(inc - gap) > 1e-9) captured = false;
            }
            expect(captured);
        }
        const auto agg = aggregate(traces, bucb.name());
        const double slope = regression_slope(agg.mean, t0 + 1, cfg.horizon);
        MESSAGE("T0=", t0, " post-switch slope ", slope);
        expect(std::fabs(slope - gap) <= 1e-9);
    }
    report(5, "UCB adversary switchover", ok);
    CHECK(ok);
}

TEST_CASE("criterion_6_mixture_ordering") {
    bool ok = true;

    const AgentSpec ts{AgentSpec::Kind::ThompsonSampling};
    const AgentSpec bucb{AgentSpec::Kind::Bucb, 1.0, 0.0};
    // zeta = 0.5 (gamma_t = 1 - 1/sqrt(t)): exponents above 1 scale the
    // sub-optimal pull rate up by the same factor on these mixtures and can
    // never undercut the zeta = 1 baseline; only the sub-unit exponent
    // produces the expected ordering (see presets/fig1-*).
    const AgentSpec ebucb_{AgentSpec::Kind::Ebucb, 0.5, 0.0};

    int ebucb_beats_bucb = 0, ebucb_beats_ts = 0, presets = 0;
    for (double gamma_scale : {0.5, 2.0}) {
        for (double w : {0.9, 0.8, 0.7}) {
            ExperimentConfig cfg;
            cfg.mu = {0.7, 0.3};
            cfg.horizon = 5000;
            cfg.replications = 10;
            cfg.scheme = ApproxScheme::mixture(w, gamma_scale);
            cfg.base_seed = 660801;

            double final_mean[3];
            const AgentSpec agents[3] = {ts, bucb, ebucb_};
            for (int i = 0; i < 3; ++i) {
                const auto traces = run_experiment(cfg, agents[i], worker_count());
                final_mean[i] = aggregate(traces, agents[i].name()).mean.back();
            }
            MESSAGE("scale=", gamma_scale, " w=", w, " thompson=", final_mean[0],
                    " bucb=", final_mean[1], " ebucb=", final_mean[2]);
            ++presets;
            if (final_mean[2] < final_mean[1]) ++ebucb_beats_bucb;
            if (final_mean[2] < final_mean[0]) ++ebucb_beats_ts;
        }
    }
    CHECK(ebucb_beats_bucb == presets);
    CHECK(ebucb_beats_ts >= presets - 1);
    ok = ebucb_beats_bucb == presets && ebucb_beats_ts >= presets - 1;
    report(6, "mixture misspecification ordering", ok);
    CHECK(ok);
}

TEST_CASE("criterion_7_log_order") {
    bool ok = true;

    ExperimentConfig cfg;
    cfg.mu = {0.7, 0.3};
    cfg.replications = 10;
    cfg.scheme = ApproxScheme::exact();
    cfg.base_seed = 770701;
    const AgentSpec ebucb_{AgentSpec::Kind::Ebucb, 2.0, 0.0};

    const double coef = theoretical_log_coefficient(cfg.mu, 2.0, -1.0, 0.1);
    std::vector<double> ratios;
    for (int horizon : {2000, 10000, 50000}) {
        cfg.horizon = horizon;
        const auto traces = run_experiment(cfg, ebucb_, worker_count());
        const auto agg = aggregate(traces, ebucb_.name());
        const double ratio = agg.mean.back() / std::log(double(horizon));
        MESSAGE("T=", horizon, " regret/lnT = ", ratio);
        ratios.push_back(ratio);
    }
    const double lo = *std::min_element(ratios.begin(), ratios.end());
    const double hi = *std::max_element(ratios.begin(), ratios.end());
    CHECK(hi / lo < 2.0);
    CHECK(hi < 3.0 * coef);
    ok = hi / lo < 2.0 && hi < 3.0 * coef;
    report(7, "logarithmic regret order", ok);
    CHECK(ok);
}

TEST_CASE("criterion_8_distribution_kernel") {
    bool ok = true;
    auto expect = [&](bool cond) {
        ok = ok && cond;
        CHECK(cond);
    };

    Rng rng(880801);
    auto grid_identity = [&](const UnivariateDistribution& d) {
        double worst = 0.0;
        for (int k = 1; k <= 99; ++k) {
            const double u = k / 100.0;
            worst = std::max(worst, std::fabs(d.cdf(d.quantile(u)) - u));
        }
        return worst;
    };
    for (int i = 0; i < 100; ++i) {
        const BetaDist beta(0.5 + 49.5 * rng.uniform(), 0.5 + 49.5 * rng.uniform());
        expect(grid_identity(beta) <= 1e-10);

        const double w = rng.uniform();
        const BetaMixture mix(
            {w, 1.0 - w},
            {{0.5 + 9.5 * rng.uniform(), 0.5 + 9.5 * rng.uniform()},
             {0.5 + 9.5 * rng.uniform(), 0.5 + 9.5 * rng.uniform()}});
        expect(grid_identity(mix) <= 1e-10);

        auto base = std::make_shared<BetaDist>(1.0 + 9.0 * rng.uniform(),
                                               1.0 + 9.0 * rng.uniform());
        const double level = 0.1 + 0.8 * rng.uniform();
        const double b = base->quantile(level);
        const double r = 1.1 + 2.0 * rng.uniform();
        const auto pw = rng.bernoulli(0.5) ? make_piecewise_left_boost(base, b, r)
                                           : make_piecewise_right_boost(base, b, r);
        expect(grid_identity(pw) <= 1e-10);
    }

    const int n = 100000;
    const double crit = 1.62762 / std::sqrt(double(n));
    auto ks_stat = [&](const UnivariateDistribution& d, std::uint64_t seed) {
        Rng local(seed);
        std::vector<double> xs(n);
        for (auto& x : xs) x = d.sample(local);
        std::sort(xs.begin(), xs.end());
        double stat = 0.0;
        for (int i = 0; i < n; ++i) {
            const double f = d.cdf(xs[i]);
            stat = std::max(stat, std::fabs(f - (i + 1.0) / n));
            stat = std::max(stat, std::fabs(f - i / double(n)));
        }
        return stat;
    };
    expect(ks_stat(BetaDist(3, 7), 21) < crit);
    expect(ks_stat(BetaMixture({0.3, 0.7}, {{2, 5}, {6, 2}}), 22) < crit);
    expect(ks_stat(PiecewiseReweighted(std::make_shared<BetaDist>(2, 2), 0.3,
                                       1.0 / BetaDist(2, 2).cdf(0.3) * 0.6,
                                       0.4 / (1.0 - BetaDist(2, 2).cdf(0.3))),
                   23) < crit);
    report(8, "distribution kernel", ok);
    CHECK(ok);
}
