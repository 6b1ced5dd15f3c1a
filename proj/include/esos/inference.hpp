#pragma once

#include <cstdint>
#include <vector>

#include "esos/estimators.hpp"
#include "esos/simulator.hpp"

namespace esos {

struct QuantileTable {
    std::vector<double> probs;   // strictly increasing
    std::vector<double> values;  // non-decreasing
    int simulations = 0;         // T values that entered the quantiles
    int dropped = 0;             // replicates without existing estimates
    bool reliable = true;        // false when drop rate exceeds 20%

    double value_at(double prob) const;  // throws if prob is not tabulated
};

struct LrtResult {
    double statistic = 0.0;
    QuantileTable quantiles;
    double level = 0.0;
    double critical_value = 0.0;
    bool reject = false;
};

// -2 * (log-likelihood at the level-pooled order-restricted estimates minus
// log-likelihood at the component-wise order-restricted estimates), clamped
// at 0 against roundoff. Throws if the component-wise estimates do not all
// exist.
double lrt_statistic(const Dataset& d, const BaselineSpec& b);

// Empirical null quantiles of the statistic via simulation under the
// identical-components hypothesis. spec_h0's alpha table must be
// level-identified (alpha_{j,k} equal across j). Replicates where the
// estimates do not exist are dropped and counted.
QuantileTable simulate_null_quantiles(const ScenarioSpec& spec_h0, int r, int n_sim,
                                      std::vector<double> probs, std::uint64_t seed);

LrtResult lrt_test(const Dataset& d, const BaselineSpec& b, double level,
                   const QuantileTable& quantiles);

// Parametric bootstrap: simulates the quantile table at the level-pooled
// order-restricted estimates fitted to d, then tests d against it.
LrtResult lrt_bootstrap(const Dataset& d, const BaselineSpec& b, double level, int n_sim,
                        std::vector<double> probs, std::uint64_t seed);

}  // namespace esos
