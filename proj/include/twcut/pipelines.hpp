#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "twcut/config.hpp"
#include "twcut/coupling.hpp"
#include "twcut/estimate.hpp"
#include "twcut/records.hpp"
#include "twcut/router.hpp"
#include "twcut/selection.hpp"

namespace twcut {

struct BenchOptions {
    std::vector<std::uint64_t> route_seeds{42, 123, 7};
    int random_trials = 5;
    SelectParams select;
    std::uint64_t base_seed = 1;
    // Benchmark protocol: one placement per transpile seed (reverse-refined),
    // with the baseline placement offered to cut routes as a warm start.
    RouterParams router{20, 0.5, 1, true};
    bool warm_start_cuts = true;
};

// One benchmark instance: graph (or TFIM circuit) -> TW2S and random cuts ->
// routed delta-ECR comparison.  SBM instances additionally record
// inter/intra classification of the selected edges against the planted
// partition.  Failures are captured in the record's error field.
struct BenchInstance {
    std::string condition;
    std::string instance;
    std::uint64_t graph_seed = 0;
    Circuit circuit;
    std::vector<int> partition;  // planted communities; empty if n/a
};

ExperimentRecord run_bench_instance(const BenchInstance& inst, const CouplingMap& cm,
                                    const BenchOptions& opt);

// Expands the [sweep] sections of a config into instances.
std::vector<BenchInstance> expand_sweeps(const RunConfig& cfg);

struct BenchResult {
    std::vector<ExperimentRecord> records;
    std::vector<ConditionSummary> summaries;
};

BenchResult run_bench(const RunConfig& cfg,
                      const std::function<void(const ExperimentRecord&)>& on_record = {});

// Breakeven grid: rows of (p, N, delta_n, sigma_h, h_ideal, m_star).
struct BreakevenRow {
    double p, n, delta_n, sigma_h, h_ideal, m_star;
};
std::vector<BreakevenRow> run_breakeven(const RunConfig& cfg);
std::string breakeven_csv_header();
std::string to_csv_row(const BreakevenRow& row);

// Failure-mode sweep on the 1D TFIM chain: per (n, T, budget, strategy) cell,
// the empirical win rate of QPD against the direct baseline under the
// parametric noise model, with the cut chosen as the best delta-ECR candidate
// from the stage-1 shortlist.
struct FailureCell {
    int n = 0;
    int trotter = 0;
    long budget = 0;
    std::string strategy;
    double p_ecr = 0.0, p_meas = 0.0;
    int reps = 0;
    double h_ideal = 0.0;
    double delta_ecr = 0.0;
    double win_rate = 0.0;
    double mean_err_base = 0.0, mean_err_qpd = 0.0;
};
std::vector<FailureCell> run_failure_sweep(const RunConfig& cfg);
std::string winrate_csv_header();
std::string to_csv_row(const FailureCell& cell);

// Exact-mode bias exchange: QPD advantage |err_base| - |err_qpd| as p_meas
// sweeps across p_ecr on a fixed small circuit with a unit-cost cut.
struct BiasExchangePoint {
    double p_meas = 0.0;
    double advantage = 0.0;
};
std::vector<BiasExchangePoint> bias_exchange_sweep(double p_ecr,
                                                   const std::vector<double>& p_meas_values);

}  // namespace twcut
