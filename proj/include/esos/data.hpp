#pragma once

#include <vector>

namespace esos {

// One system's failure record: strictly increasing failure times with the
// labels of the components that produced them.
struct Observation {
    std::vector<double> times;  // x_1 < ... < x_s
    std::vector<int> sources;   // c_1, ..., c_s, distinct labels in 1..n

    int depth() const { return static_cast<int>(times.size()); }
};

// r observations sharing system size n and observation depth s.
struct Dataset {
    int n = 0;
    std::vector<Observation> observations;

    int r() const { return static_cast<int>(observations.size()); }
    int s() const { return observations.empty() ? 0 : observations.front().depth(); }
};

// Throw std::invalid_argument on any violated invariant. Ties in times are
// rejected exactly: the model is continuous, so tied inputs signal bad data.
void validate(const Observation& obs, int n);
void validate(const Dataset& d);

}  // namespace esos
