#pragma once

#include <vector>

namespace esos {

struct WeightedSeries {
    std::vector<double> values;
    std::vector<double> weights;  // strictly positive
};

// Weighted least-squares projection of `series.values` onto non-decreasing
// sequences, computed by pool-adjacent-violators. Linear time.
std::vector<double> isotonic_nondecreasing(const WeightedSeries& series);

}  // namespace esos
