#ifndef EBUCB_HARNESS_HPP
#define EBUCB_HARNESS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ebucb/agents.hpp"
#include "ebucb/approx.hpp"
#include "ebucb/bandit.hpp"

namespace ebucb {

struct AgentSpec {
    enum class Kind { ThompsonSampling, Bucb, Ebucb };

    Kind kind = Kind::Ebucb;
    double zeta = 2.0;  // Ebucb only; Bucb pins zeta = 1
    double c = 0.0;

    std::string name() const;
    QuantileSchedule schedule(int horizon) const;
};

struct ExperimentConfig {
    std::vector<double> mu{0.7, 0.3};
    int horizon = 1000;
    int replications = 10;
    std::vector<AgentSpec> agents;
    ApproxScheme scheme;
    std::uint64_t base_seed = 1;
    std::string label;
    std::string out_dir = ".";
};

/// Flat key = value config ('#' comments). Unknown keys are an error.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

/// Full t = 1..T loop for one (agent, replication); deterministic per
/// (base_seed, rep_index) via the splitmix64 seed mix.
RegretTrace run_replication(const ExperimentConfig& config, const AgentSpec& agent,
                            int rep_index);

/// All replications for one agent, dispatched over `jobs` worker threads,
/// collected in index order.
std::vector<RegretTrace> run_experiment(const ExperimentConfig& config,
                                        const AgentSpec& agent, int jobs);

struct AggregateResult {
    std::string label;
    std::vector<double> mean;    // length T
    std::vector<double> stderr_; // sample stddev / sqrt(R); zero when R = 1
};

AggregateResult aggregate(const std::vector<RegretTrace>& traces,
                          const std::string& label);

/// Long format: header agent,scheme,rep,t,cum_regret.
void export_traces_csv(const std::vector<RegretTrace>& traces,
                       const std::string& agent, const std::string& scheme,
                       std::ostream& out);

/// Aggregated format: header agent,scheme,t,mean,stderr.
void export_aggregate_csv(const std::vector<AggregateResult>& results,
                          const std::string& scheme, std::ostream& out);

/// Parses the aggregated CSV format back into per-agent series.
std::vector<AggregateResult> parse_aggregate_csv(std::istream& in);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Least-squares slope of y against t over the half-open index window
/// [t_begin, t_end] (1-based, inclusive).
double regression_slope(const std::vector<double>& y, int t_begin, int t_end);

} // namespace ebucb

#endif
