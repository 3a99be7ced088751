#include "twcut/records.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "twcut/breakeven.hpp"
#include "twcut/stats.hpp"

namespace twcut {

std::string experiments_csv_header() {
    return "condition,instance,graph_seed,ecr_uncut,ecr_tw2s_cut,ecr_random_cut_mean,"
           "delta_tw2s,delta_random_mean,delta_adv,win,edge_u,edge_v,tw2s_edge_type,"
           "stage1_edge_type,r_inter,error";
}

std::string to_csv_row(const ExperimentRecord& r) {
    std::ostringstream os;
    os << r.condition << "," << r.instance << "," << r.graph_seed << ","
       << format_metric(r.ecr_uncut) << "," << format_metric(r.ecr_tw2s_cut) << ","
       << format_metric(r.ecr_random_cut_mean) << "," << format_metric(r.delta_tw2s) << ","
       << format_metric(r.delta_random_mean) << "," << format_metric(r.delta_adv) << ","
       << (r.win ? 1 : 0) << "," << r.tw2s_edge.first << "," << r.tw2s_edge.second << ","
       << r.tw2s_edge_type << "," << r.stage1_edge_type << ","
       << (r.r_inter < 0 ? "" : format_metric(r.r_inter)) << "," << r.error;
    return os.str();
}

std::vector<ConditionSummary> summarize(const std::vector<ExperimentRecord>& records) {
    std::map<std::string, std::vector<const ExperimentRecord*>> by_cond;
    std::vector<std::string> order;
    for (const auto& r : records) {
        if (!r.error.empty()) continue;
        if (!by_cond.count(r.condition)) order.push_back(r.condition);
        by_cond[r.condition].push_back(&r);
    }
    std::vector<ConditionSummary> out;
    for (const auto& cond : order) {
        const auto& rs = by_cond[cond];
        ConditionSummary s;
        s.condition = cond;
        s.n = static_cast<int>(rs.size());
        std::vector<double> advs;
        int wins = 0;
        for (const auto* r : rs) {
            advs.push_back(r->delta_adv);
            wins += r->win ? 1 : 0;
        }
        s.mean_adv = mean(advs);
        s.win_rate = static_cast<double>(wins) / s.n;
        if (advs.size() >= 2 && sample_variance(advs) > 0.0) {
            s.p_value = t_test_one_sample(advs).p;
            s.p_defined = true;
        }
        out.push_back(s);
    }
    return out;
}

double enrichment(const std::vector<ExperimentRecord>& records) {
    int trials = 0, inter = 0;
    double r_sum = 0.0;
    for (const auto& r : records) {
        if (!r.error.empty() || r.stage1_edge_type.empty() || r.r_inter < 0.0) continue;
        ++trials;
        inter += r.stage1_edge_type == "inter" ? 1 : 0;
        r_sum += r.r_inter;
    }
    if (trials == 0) return std::numeric_limits<double>::quiet_NaN();
    double r_mean = r_sum / trials;
    if (r_mean == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return (static_cast<double>(inter) / trials) / r_mean;
}

}  // namespace twcut
