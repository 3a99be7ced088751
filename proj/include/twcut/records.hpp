#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twcut/graph.hpp"

namespace twcut {

struct ExperimentRecord {
    std::string condition;       // family + parameters, seed excluded
    std::string instance;        // condition + seed
    std::uint64_t graph_seed = 0;
    double ecr_uncut = 0.0;
    double ecr_tw2s_cut = 0.0;
    double ecr_random_cut_mean = 0.0;
    double delta_tw2s = 0.0;
    double delta_random_mean = 0.0;
    double delta_adv = 0.0;      // delta_tw2s - delta_random_mean
    bool win = false;
    Edge tw2s_edge{-1, -1};
    std::string tw2s_edge_type;    // "inter" | "intra" | ""
    std::string stage1_edge_type;  // same, for the stage-1 top-1 edge
    double r_inter = -1.0;         // inter-community edge fraction, -1 if n/a
    std::string error;             // nonempty when the instance failed
};

std::string experiments_csv_header();
std::string to_csv_row(const ExperimentRecord& r);

struct ConditionSummary {
    std::string condition;
    int n = 0;
    double mean_adv = 0.0;
    double win_rate = 0.0;
    double p_value = 1.0;  // one-sample t-test of delta_adv against zero
    bool p_defined = false;
};

std::vector<ConditionSummary> summarize(const std::vector<ExperimentRecord>& records);

// (fraction of trials selecting an inter-community edge) / (mean inter
// fraction); uses the stage-1 edge type.  NaN when no record carries
// community data or the mean inter fraction is zero.
double enrichment(const std::vector<ExperimentRecord>& records);

}  // namespace twcut
