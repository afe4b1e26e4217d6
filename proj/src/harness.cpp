#include "ebucb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ebucb {

std::string AgentSpec::name() const {
    switch (kind) {
        case Kind::ThompsonSampling:
            return "thompson";
        case Kind::Bucb:
            return "bucb";
        case Kind::Ebucb:
            return "ebucb";
    }
    return "unknown";
}

QuantileSchedule AgentSpec::schedule(int horizon) const {
    const double z = (kind == Kind::Bucb) ? 1.0 : zeta;
    return QuantileSchedule{z, c, horizon};
}

namespace {

AgentSpec parse_agent(const std::string& name) {
    AgentSpec a;
    if (name == "thompson") {
        a.kind = AgentSpec::Kind::ThompsonSampling;
    } else if (name == "bucb") {
        a.kind = AgentSpec::Kind::Bucb;
        a.zeta = 1.0;
    } else if (name == "ebucb") {
        a.kind = AgentSpec::Kind::Ebucb;
    } else {
        throw std::invalid_argument("config: unknown agent '" + name + "'");
    }
    return a;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

double to_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for '" + key + "'");
    }
}

} // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    cfg.agents.clear();

    std::string scheme_name = "exact";
    double w = 0.9, gamma_scale = 2.0, r = 2.0;
    bool have_r = false;
    int t0 = 0;
    double zeta = 2.0, c = 0.0;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) {
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": expected 'key = value'");
            }
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key or value");
        }

        if (key == "mu") {
            cfg.mu.clear();
            for (const auto& item : split_list(value)) {
                cfg.mu.push_back(to_double(item, key));
            }
        } else if (key == "horizon") {
            cfg.horizon = static_cast<int>(to_double(value, key));
        } else if (key == "replications") {
            cfg.replications = static_cast<int>(to_double(value, key));
        } else if (key == "agents") {
            for (const auto& item : split_list(value)) {
                cfg.agents.push_back(parse_agent(item));
            }
        } else if (key == "zeta") {
            zeta = to_double(value, key);
        } else if (key == "c") {
            c = to_double(value, key);
        } else if (key == "scheme") {
            scheme_name = value;
        } else if (key == "w") {
            w = to_double(value, key);
        } else if (key == "gamma_scale") {
            gamma_scale = to_double(value, key);
        } else if (key == "r") {
            r = to_double(value, key);
            have_r = true;
        } else if (key == "t0") {
            t0 = static_cast<int>(to_double(value, key));
        } else if (key == "base_seed") {
            cfg.base_seed = static_cast<std::uint64_t>(to_double(value, key));
        } else if (key == "label") {
            cfg.label = value;
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        }
    }

    if (cfg.horizon < 1 || cfg.replications < 1) {
        throw std::invalid_argument("config: horizon and replications must be >= 1");
    }
    if (cfg.agents.empty()) cfg.agents.push_back(parse_agent("ebucb"));
    for (auto& a : cfg.agents) {
        if (a.kind == AgentSpec::Kind::Ebucb) a.zeta = zeta;
        a.c = c;
    }

    if (scheme_name == "exact") {
        cfg.scheme = ApproxScheme::exact();
    } else if (scheme_name == "mixture") {
        cfg.scheme = ApproxScheme::mixture(w, gamma_scale);
    } else if (scheme_name == "ts-adversary" || scheme_name == "ucb-adversary") {
        if (t0 > 0) {
            // Solve gamma_{T0} = 1/r on the (first) UCB agent's schedule.
            QuantileSchedule sched{1.0, 0.0, cfg.horizon};
            for (const auto& a : cfg.agents) {
                if (a.kind != AgentSpec::Kind::ThompsonSampling) {
                    sched = a.schedule(cfg.horizon);
                    break;
                }
            }
            const double g = gamma_of_t(sched, t0);
            if (!(g > 0.0)) {
                throw std::invalid_argument("config: gamma_{t0} = 0, cannot place T0 there");
            }
            r = 1.0 / g;
        } else if (!have_r) {
            throw std::invalid_argument("config: adversary schemes need 'r' or 't0'");
        }
        cfg.scheme = scheme_name == "ts-adversary" ? ApproxScheme::ts_adversary(r)
                                                   : ApproxScheme::ucb_adversary(r);
    } else {
        throw std::invalid_argument("config: unknown scheme '" + scheme_name + "'");
    }
    if (cfg.label.empty()) cfg.label = cfg.scheme.name();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse_config(in);
}

RegretTrace run_replication(const ExperimentConfig& config, const AgentSpec& agent,
                            int rep_index) {
    const BernoulliEnv env(config.mu);
    const int K = env.num_arms();
    PosteriorState state(K);
    const QuantileSchedule schedule = agent.schedule(config.horizon);

    // The stream also keys on the agent kind so traces do not alias across
    // agents sharing a base seed. Fixed tags keep the scheme documented:
    // seed = mix(base_seed ^ splitmix64(kind+1), rep_index).
    const std::uint64_t agent_tag =
        splitmix64(static_cast<std::uint64_t>(agent.kind) + 1);
    const std::uint64_t stream_seed =
        mix_seed(config.base_seed ^ agent_tag, static_cast<std::uint64_t>(rep_index));
    Rng rng(stream_seed);

    RegretTrace trace;
    trace.seed = stream_seed;
    trace.cum_regret.resize(config.horizon);
    trace.pulls.assign(K, 0);

    double cum = 0.0;
    std::vector<DistPtr> holders(K);
    std::vector<const UnivariateDistribution*> posteriors(K);
    for (int t = 1; t <= config.horizon; ++t) {
        for (int j = 0; j < K; ++j) {
            holders[j] = approx_posterior(config.scheme, state, t - 1, j, &schedule);
            posteriors[j] = holders[j].get();
        }
        int arm;
        switch (agent.kind) {
            case AgentSpec::Kind::ThompsonSampling:
                arm = select_thompson(posteriors, rng);
                break;
            case AgentSpec::Kind::Bucb:
                arm = select_bucb(posteriors, t, agent.c, config.horizon, rng);
                break;
            case AgentSpec::Kind::Ebucb:
            default:
                arm = select_ebucb(posteriors, t, schedule, rng);
                break;
        }
        const int reward = env.pull(arm, rng);
        state.update(arm, reward);
        cum += env.regret_increment(arm);
        trace.cum_regret[t - 1] = cum;
        trace.pulls[arm] += 1;
    }
    return trace;
}

std::vector<RegretTrace> run_experiment(const ExperimentConfig& config,
                                        const AgentSpec& agent, int jobs) {
    const int R = config.replications;
    std::vector<RegretTrace> traces(R);
    if (jobs < 1) jobs = 1;
    jobs = std::min(jobs, R);

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= R) break;
            traces[i] = run_replication(config, agent, i);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return traces;
}

AggregateResult aggregate(const std::vector<RegretTrace>& traces,
                          const std::string& label) {
    if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
    const std::size_t T = traces.front().cum_regret.size();
    for (const auto& tr : traces) {
        if (tr.cum_regret.size() != T) {
            throw std::invalid_argument("aggregate: mismatched horizons");
        }
    }
    const double R = static_cast<double>(traces.size());
    AggregateResult out;
    out.label = label;
    out.mean.assign(T, 0.0);
    out.stderr_.assign(T, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
        double m = 0.0;
        for (const auto& tr : traces) m += tr.cum_regret[t];
        m /= R;
        out.mean[t] = m;
        if (traces.size() > 1) {
            double ss = 0.0;
            for (const auto& tr : traces) {
                const double d = tr.cum_regret[t] - m;
                ss += d * d;
            }
            out.stderr_[t] = std::sqrt(ss / (R - 1.0)) / std::sqrt(R);
        }
    }
    return out;
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void export_traces_csv(const std::vector<RegretTrace>& traces,
                       const std::string& agent, const std::string& scheme,
                       std::ostream& out) {
    out << "agent,scheme,rep,t,cum_regret\n";
    for (std::size_t rep = 0; rep < traces.size(); ++rep) {
        const auto& tr = traces[rep];
        for (std::size_t t = 0; t < tr.cum_regret.size(); ++t) {
            out << agent << ',' << scheme << ',' << rep << ',' << (t + 1) << ','
                << format_double(tr.cum_regret[t]) << '\n';
        }
    }
}

void export_aggregate_csv(const std::vector<AggregateResult>& results,
                          const std::string& scheme, std::ostream& out) {
    out << "agent,scheme,t,mean,stderr\n";
    for (const auto& res : results) {
        for (std::size_t t = 0; t < res.mean.size(); ++t) {
            out << res.label << ',' << scheme << ',' << (t + 1) << ','
                << format_double(res.mean[t]) << ','
                << format_double(res.stderr_[t]) << '\n';
        }
    }
}

std::vector<AggregateResult> parse_aggregate_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("aggregate csv: empty input");
    }
    if (line != "agent,scheme,t,mean,stderr" &&
        line != "agent,scheme,t,mean,stderr\r") {
        throw std::runtime_error("aggregate csv: unexpected header: " + line);
    }
    std::vector<AggregateResult> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string agent, scheme, t_s, mean_s, stderr_s;
        if (!std::getline(ss, agent, ',') || !std::getline(ss, scheme, ',') ||
            !std::getline(ss, t_s, ',') || !std::getline(ss, mean_s, ',') ||
            !std::getline(ss, stderr_s)) {
            throw std::runtime_error("aggregate csv: malformed row: " + line);
        }
        if (out.empty() || out.back().label != agent) {
            out.push_back(AggregateResult{agent, {}, {}});
        }
        out.back().mean.push_back(std::stod(mean_s));
        out.back().stderr_.push_back(std::stod(stderr_s));
    }
    return out;
}

double regression_slope(const std::vector<double>& y, int t_begin, int t_end) {
    if (t_begin < 1 || t_end > static_cast<int>(y.size()) || t_begin >= t_end) {
        throw std::invalid_argument("regression_slope: bad window");
    }
    const int n = t_end - t_begin + 1;
    double sx = 0.0, sy = 0.0;
    for (int t = t_begin; t <= t_end; ++t) {
        sx += t;
        sy += y[t - 1];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (int t = t_begin; t <= t_end; ++t) {
        sxx += (t - mx) * (t - mx);
        sxy += (t - mx) * (y[t - 1] - my);
    }
    return sxy / sxx;
}

} // namespace ebucb
