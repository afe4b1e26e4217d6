#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ebucb/approx.hpp"
#include "ebucb/divergence.hpp"
#include "ebucb/harness.hpp"
#include "ebucb/rng.hpp"
#include "ebucb/shift.hpp"
#include "ebucb/svg.hpp"

namespace {

using namespace ebucb;

int g_failures = 0;

void check_line(const std::string& name, bool pass, double measured, double bound) {
    if (!pass) ++g_failures;
    std::printf("CHECK %s %s %.10g %.10g\n", name.c_str(), pass ? "pass" : "fail",
                measured, bound);
}

BetaParams random_beta(Rng& rng, double lo, double hi) {
    return BetaParams{lo + (hi - lo) * rng.uniform(), lo + (hi - lo) * rng.uniform()};
}

int cmd_run(const std::string& config_path, std::string out_dir, int jobs,
            std::optional<std::uint64_t> seed) {
    ExperimentConfig cfg = parse_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed) cfg.base_seed = *seed;
    std::filesystem::create_directories(cfg.out_dir);

    std::vector<AggregateResult> aggregates;
    for (const auto& agent : cfg.agents) {
        auto traces = run_experiment(cfg, agent, jobs);
        aggregates.push_back(aggregate(traces, agent.name()));

        const std::string trace_path =
            cfg.out_dir + "/" + cfg.label + "_" + agent.name() + "_traces.csv";
        std::ofstream out(trace_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open " << trace_path << "\n";
            return 2;
        }
        export_traces_csv(traces, agent.name(), cfg.scheme.name(), out);
    }

    const std::string agg_path = cfg.out_dir + "/" + cfg.label + "_aggregate.csv";
    {
        std::ofstream out(agg_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open " << agg_path << "\n";
            return 2;
        }
        export_aggregate_csv(aggregates, cfg.scheme.name(), out);
    }

    std::optional<int> marker;
    if (cfg.scheme.kind == ApproxScheme::Kind::UcbAdversary) {
        for (const auto& agent : cfg.agents) {
            if (agent.kind != AgentSpec::Kind::ThompsonSampling) {
                marker = ucb_adversary_switch_time(agent.schedule(cfg.horizon),
                                                   cfg.scheme.r);
                break;
            }
        }
    }
    emit_svg_file(aggregates, cfg.out_dir + "/" + cfg.label + ".svg", cfg.label,
                  marker);
    std::printf("wrote %s\n", agg_path.c_str());
    return 0;
}

int cmd_verify_divergence(int trials, double tol) {
    Rng rng(20240117);
    const BetaDist uniform(1, 1);
    const BetaDist linear(2, 1);

    // closed-form anchors
    {
        const auto d = alpha_divergence(uniform, linear, 0.5, tol);
        check_line("closed_form_alpha_half", !d.is_infinite &&
                   std::fabs(d.value - 0.228763833671747) <= 1e-6,
                   d.value, 0.228763833671747);
        const auto kl = kl_divergence(uniform, linear, tol);
        check_line("closed_form_kl", !kl.is_infinite &&
                   std::fabs(kl.value - 0.306852819440055) <= 1e-6,
                   kl.value, 0.306852819440055);
        const auto inf = alpha_divergence(uniform, linear, 2.0, tol);
        check_line("divergent_chi2_flag", inf.is_infinite, inf.value, INFINITY);
    }

    // positivity across alpha, random pairs
    {
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i < trials; ++i) {
            const BetaDist p1(random_beta(rng, 1.0, 30.0));
            const BetaDist p2(random_beta(rng, 1.0, 30.0));
            for (double alpha : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0}) {
                const auto d = alpha_divergence(p1, p2, alpha, tol);
                if (d.is_infinite) continue;
                worst = std::min(worst, d.value);
                if (d.value < -1e-8) ok = false;
            }
        }
        check_line("positivity", ok, worst, -1e-8);
    }

    // symmetry D_alpha(P1,P2) = D_{1-alpha}(P2,P1)
    {
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i < trials; ++i) {
            const BetaDist p1(random_beta(rng, 1.0, 20.0));
            const BetaDist p2(random_beta(rng, 1.0, 20.0));
            const double alpha = 0.5 + 1.5 * rng.uniform(); // (0.5, 2)
            const auto a = alpha_divergence(p1, p2, alpha, tol);
            const auto b = alpha_divergence(p2, p1, 1.0 - alpha, tol);
            if (a.is_infinite || b.is_infinite) continue;
            const double diff = std::fabs(a.value - b.value);
            worst = std::max(worst, diff);
            if (diff > 2.0 * tol) ok = false;
        }
        check_line("symmetry", ok, worst, 2.0 * tol);
    }

    // dual representation (direct vs quantile form)
    {
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i < trials; ++i) {
            const BetaDist p1(random_beta(rng, 1.0, 30.0));
            const BetaDist p2(random_beta(rng, 1.0, 30.0));
            const auto a = alpha_divergence(p1, p2, 0.5, tol);
            const auto b = alpha_divergence_quantile_form(p1, p2, 0.5, tol);
            if (a.is_infinite != b.is_infinite) {
                ok = false;
                continue;
            }
            if (a.is_infinite) continue;
            const double diff = std::fabs(a.value - b.value);
            worst = std::max(worst, diff);
            if (diff > 5.0 * tol) ok = false;
        }
        check_line("dual_representation", ok, worst, 5.0 * tol);
    }

    // KL limit continuity at alpha -> 1
    {
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i < std::max(1, trials / 10); ++i) {
            const BetaDist p1(random_beta(rng, 1.0, 10.0));
            const BetaDist p2(random_beta(rng, 1.0, 10.0));
            const auto kl = kl_divergence(p1, p2, tol);
            // the O(|alpha-1| Var[log ratio]) continuity gap outgrows the
            // tolerance for far-apart pairs
            if (kl.is_infinite || kl.value > 1.0) continue;
            for (double alpha : {1.0 - 1e-4, 1.0 + 1e-4}) {
                const auto d = alpha_divergence(p1, p2, alpha, tol);
                if (d.is_infinite || kl.is_infinite) continue;
                const double diff = std::fabs(d.value - kl.value);
                worst = std::max(worst, diff);
                if (diff > 1e-3) ok = false;
            }
        }
        check_line("kl_limit", ok, worst, 1e-3);
    }

    // exact scheme has zero budget usage
    {
        PosteriorState state(2);
        state.update(0, 1);
        state.update(1, 0);
        const auto report = verify_budget(ApproxScheme::exact(), state, 2, 0,
                                          DivergenceBudget{0.1, 2.0, -1.0}, tol);
        check_line("exact_scheme_zero", report.within &&
                   std::fabs(report.d_alpha1) <= 1e-8 &&
                   std::fabs(report.d_alpha2) <= 1e-8,
                   std::max(report.d_alpha1, report.d_alpha2), 1e-8);
    }
    return g_failures == 0 ? 0 : 1;
}

int cmd_verify_shift(int trials) {
    Rng rng(771199);

    // Shift-bound soundness, both directions
    {
        bool ok_a = true, ok_b = true;
        double worst_a = -1.0, worst_b = -1.0;
        for (int i = 0; i < trials; ++i) {
            auto base = std::make_shared<BetaDist>(random_beta(rng, 1.0, 10.0));
            const double gamma = 0.5 + 0.49 * rng.uniform();
            const double delta =
                -0.9 * gamma + (0.9 * gamma + 0.9 * (1.0 - gamma)) * rng.uniform();
            const auto p2 = extremal_pair(base, gamma, delta);
            const double measured = measure_shift(*base, *p2, gamma);

            const double eps_a = g_of_delta(gamma, delta, 2.0);
            if (eps_a > 0.0 && std::isfinite(eps_a)) {
                const double bound = shift_upper_bound({gamma, eps_a, 2.0});
                worst_a = std::max(worst_a, measured - bound);
                if (measured > bound + 1e-8) ok_a = false;
            }
            const double eps_b = g_of_delta(gamma, delta, -1.0);
            if (eps_b > 0.0 && std::isfinite(eps_b)) {
                const double bound = shift_lower_bound({gamma, eps_b, -1.0});
                worst_b = std::max(worst_b, bound - measured);
                if (measured < bound - 1e-8) ok_b = false;
            }
        }
        check_line("soundness_upper_alpha2", ok_a, worst_a, 1e-8);
        check_line("soundness_lower_alpha_neg1", ok_b, worst_b, 1e-8);
    }

    // Tightness: the extremal pair attains divergence g(delta) exactly
    {
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i < std::max(1, trials / 10); ++i) {
            auto base = std::make_shared<BetaDist>(random_beta(rng, 1.0, 8.0));
            const double gamma = 0.55 + 0.4 * rng.uniform();
            const double delta = 0.05 + 0.5 * (1.0 - gamma - 0.06) * rng.uniform();
            const auto p2 = extremal_pair(base, gamma, delta);
            const double expected = g_of_delta(gamma, delta, 2.0);
            const auto d = alpha_divergence(*base, *p2, 2.0, 1e-9);
            if (d.is_infinite) {
                ok = false;
                continue;
            }
            const double diff = std::fabs(d.value - expected);
            worst = std::max(worst, diff);
            if (diff > 1e-7) ok = false;
        }
        check_line("tightness", ok, worst, 1e-7);
    }

    // alpha in (0,1) cannot control the shift: extreme deltas stay in budget
    {
        const double alpha = 0.5;
        const double eps = 1.0 / (-alpha * (alpha - 1.0)); // = 4
        bool ok = true;
        double worst = 0.0;
        for (double gamma : {0.3, 0.5, 0.8}) {
            for (double delta : {-gamma + 0.01, 1.0 - gamma - 0.01}) {
                auto base = std::make_shared<BetaDist>(1.0, 1.0);
                const auto p2 = extremal_pair(base, gamma, delta);
                const auto d = alpha_divergence(*base, *p2, alpha, 1e-9);
                const double measured = measure_shift(*base, *p2, gamma);
                worst = std::max(worst, d.value);
                if (d.is_infinite || d.value > eps + 1e-8 ||
                    std::fabs(measured - delta) > 1e-9) {
                    ok = false;
                }
            }
        }
        check_line("uncontrolled_alpha_in_01", ok, worst, 4.0);
    }
    return g_failures == 0 ? 0 : 1;
}

int cmd_adversary_check(const std::string& scheme_name, double epsilon,
                        double alpha, std::optional<double> r_opt, int trials) {
    const auto rmax = max_adversary_r(epsilon, alpha);
    double r;
    if (r_opt) {
        r = *r_opt;
    } else if (rmax) {
        r = 0.99 * *rmax;
        if (r <= 1.0) r = 0.5 * (1.0 + *rmax);
    } else {
        r = 10.0; // unbounded budget: any r complies
    }
    std::printf("adversary-check scheme=%s epsilon=%g alpha=%g r=%g r_max=%s\n",
                scheme_name.c_str(), epsilon, alpha, r,
                rmax ? std::to_string(*rmax).c_str() : "unbounded");

    const bool ucb = scheme_name == "ucb";
    const ApproxScheme scheme =
        ucb ? ApproxScheme::ucb_adversary(r) : ApproxScheme::ts_adversary(r);
    const QuantileSchedule schedule{1.0, 0.0, 1 << 20};

    Rng rng(555001);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        PosteriorState state(2);
        const int t = 1 + static_cast<int>(rng.below(200));
        for (int step = 0; step < t; ++step) {
            const int arm = static_cast<int>(rng.below(2));
            state.update(arm, rng.bernoulli(arm == 0 ? 0.7 : 0.3) ? 1 : 0);
        }
        const int arm = ucb ? 1 : 0;
        const auto q = approx_posterior(scheme, state, t, arm, &schedule);
        const BetaDist exact(state.exact_posterior(arm));
        const auto d = alpha_divergence(*q, exact, alpha, 1e-9);
        if (d.is_infinite || d.value > epsilon + 1e-6) ok = false;
        if (!d.is_infinite) worst = std::max(worst, d.value);
    }
    check_line("adversary_budget", ok, worst, epsilon + 1e-6);
    return g_failures == 0 ? 0 : 1;
}

int cmd_plot(const std::vector<std::string>& inputs, const std::string& output) {
    std::vector<AggregateResult> all;
    for (const auto& path : inputs) {
        std::ifstream in(path);
        if (!in) {
            std::cerr << "error: cannot open " << path << "\n";
            return 2;
        }
        for (auto& r : parse_aggregate_csv(in)) all.push_back(std::move(r));
    }
    emit_svg_file(all, output, "cumulative regret");
    std::printf("wrote %s\n", output.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian bandit simulation and verification toolkit"};
    app.require_subcommand(1);

    // run
    std::string config_path, out_dir;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    std::optional<std::uint64_t> seed;
    auto* run = app.add_subcommand("run", "run an experiment config");
    run->add_option("--config", config_path, "config file")->required();
    run->add_option("--out-dir", out_dir, "output directory");
    run->add_option("--jobs", jobs, "worker threads");
    run->add_option("--seed", seed, "override base seed");

    // verify-divergence
    int div_trials = 200;
    double div_tol = 1e-8;
    auto* vdiv = app.add_subcommand("verify-divergence",
                                    "divergence engine property checks");
    vdiv->add_option("--trials", div_trials, "random instances");
    vdiv->add_option("--tol", div_tol, "quadrature tolerance");

    // verify-shift
    int shift_trials = 500;
    auto* vshift =
        app.add_subcommand("verify-shift", "quantile-shift bound checks");
    vshift->add_option("--trials", shift_trials, "random instances");

    // adversary-check
    std::string adv_scheme;
    double adv_eps = 0.5, adv_alpha = -1.0;
    std::optional<double> adv_r;
    int adv_trials = 50;
    auto* adv = app.add_subcommand("adversary-check",
                                   "single-divergence budget compliance");
    adv->add_option("--scheme", adv_scheme, "ts or ucb")
        ->required()
        ->check(CLI::IsMember({"ts", "ucb"}));
    adv->add_option("--epsilon", adv_eps, "budget")->required();
    adv->add_option("--alpha", adv_alpha, "divergence order (< 1)")->required();
    adv->add_option("--r", adv_r, "override reweighting level");
    adv->add_option("--trials", adv_trials, "random posterior states");

    // plot
    std::vector<std::string> plot_in;
    std::string plot_out;
    auto* plot = app.add_subcommand("plot", "render aggregated CSVs as SVG");
    plot->add_option("--in", plot_in, "aggregated CSV files")->required();
    plot->add_option("--out", plot_out, "output SVG")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir, jobs, seed);
        if (vdiv->parsed()) return cmd_verify_divergence(div_trials, div_tol);
        if (vshift->parsed()) return cmd_verify_shift(shift_trials);
        if (adv->parsed()) {
            return cmd_adversary_check(adv_scheme, adv_eps, adv_alpha, adv_r,
                                       adv_trials);
        }
        if (plot->parsed()) return cmd_plot(plot_in, plot_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
