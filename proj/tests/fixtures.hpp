#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "esos/data.hpp"
#include "esos/isotonic.hpp"

namespace esos::testing {

// The worked 2-out-of-3 data example: r = 10 systems with three components
// observed until the second failure.
inline Dataset example_2of3() {
    const std::vector<double> x1{0.22, 0.01, 0.23, 0.14, 0.24, 0.05, 0.17, 0.37, 0.05, 0.16};
    const std::vector<int> c1{1, 1, 3, 1, 2, 1, 2, 1, 1, 2};
    const std::vector<double> x2{0.58, 0.32, 0.84, 0.32, 0.39, 0.20, 0.25, 1.32, 0.29, 0.21};
    const std::vector<int> c2{2, 2, 2, 3, 1, 2, 1, 3, 2, 1};
    Dataset d;
    d.n = 3;
    for (int i = 0; i < 10; ++i)
        d.observations.push_back({{x1[i], x2[i]}, {c1[i], c2[i]}});
    return d;
}

inline std::string example_2of3_csv() {
    const Dataset d = example_2of3();
    std::string out = "# n=3\ntrial,level,time,component\n";
    char buf[64];
    for (int i = 0; i < d.r(); ++i)
        for (int k = 0; k < 2; ++k) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.2f,%d\n", i + 1, k + 1,
                          d.observations[i].times[k], d.observations[i].sources[k]);
            out += buf;
        }
    return out;
}

// Direct max-min evaluation of the weighted isotonic regression, O(K^3);
// test oracle for the pool-adjacent-violators implementation.
inline std::vector<double> isotonic_maxmin(const WeightedSeries& series) {
    const int k = static_cast<int>(series.values.size());
    auto mean = [&](int lo, int hi) {  // inclusive
        double num = 0.0, den = 0.0;
        for (int i = lo; i <= hi; ++i) {
            num += series.values[i] * series.weights[i];
            den += series.weights[i];
        }
        return num / den;
    };
    std::vector<double> out(k);
    for (int i = 0; i < k; ++i) {
        double best = -std::numeric_limits<double>::infinity();
        for (int lo = 0; lo <= i; ++lo) {
            double worst = std::numeric_limits<double>::infinity();
            for (int hi = i; hi < k; ++hi) worst = std::min(worst, mean(lo, hi));
            best = std::max(best, worst);
        }
        out[i] = best;
    }
    return out;
}

}  // namespace esos::testing
