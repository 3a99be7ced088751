#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twcut/executor.hpp"
#include "twcut/qpd.hpp"
#include "twcut/selection.hpp"

namespace twcut {

enum class ShotStrategy { Shared, PerSubcircuit15 };

const char* strategy_name(ShotStrategy s);
ShotStrategy parse_strategy(const std::string& name);

struct EstimateResult {
    double value = 0.0;
    std::vector<long> shots_used;      // per branch; single entry for direct runs
    std::vector<double> per_branch;    // branch estimates (QPD runs)
    std::string strategy;
    std::uint64_t seed = 0;
};

// Empirical expectation from M shots: the exact outcome distribution per
// measurement group is computed once, then sampled; measurement bit flips are
// applied per shot.  Unbiased; deterministic per seed.
EstimateResult sample_expectation(const Circuit& c, const Observable& o, long shots,
                                  const NoiseModel& noise, std::uint64_t seed,
                                  const std::vector<double>* ecr_equiv = nullptr,
                                  const std::vector<int>& sign_bits = {});

// Shot allocation per branch: Shared splits M over the 6 branches (floor,
// remainder to the lowest branch indices); PerSubcircuit15 gives each branch
// floor(1.5 * M).
std::vector<long> allocate_shots(long budget, int branches, ShotStrategy strategy);

// QPD estimate of <O> with the cut gate replaced by each branch in turn and
// the results combined with the branch coefficients.  exact_mode ignores the
// budget and uses exact per-branch expectations.  Per-branch RNG streams are
// derived from (seed, branch index).
EstimateResult qpd_estimate(const Circuit& c, const CutSelection& cut, const Observable& o,
                            long budget, ShotStrategy strategy, const NoiseModel& noise,
                            std::uint64_t seed, bool exact_mode = false,
                            const std::vector<double>* ecr_equiv = nullptr);

}  // namespace twcut
