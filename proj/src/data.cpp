#include "esos/data.hpp"

#include <stdexcept>
#include <string>

namespace esos {

void validate(const Observation& obs, int n) {
    const int s = obs.depth();
    if (s < 1) throw std::invalid_argument("observation is empty");
    if (static_cast<int>(obs.sources.size()) != s)
        throw std::invalid_argument("times and sources differ in length");
    if (s > n) throw std::invalid_argument("observation depth exceeds system size");
    if (!(obs.times[0] > 0))
        throw std::invalid_argument("first failure time must be positive");
    for (int k = 1; k < s; ++k) {
        if (!(obs.times[k] > obs.times[k - 1]))
            throw std::invalid_argument("failure times not strictly increasing at level " +
                                        std::to_string(k + 1));
    }
    std::vector<bool> seen(n + 1, false);
    for (int k = 0; k < s; ++k) {
        const int c = obs.sources[k];
        if (c < 1 || c > n)
            throw std::invalid_argument("component label " + std::to_string(c) +
                                        " outside 1.." + std::to_string(n));
        if (seen[c])
            throw std::invalid_argument("component " + std::to_string(c) +
                                        " fails more than once");
        seen[c] = true;
    }
}

void validate(const Dataset& d) {
    if (d.n < 1) throw std::invalid_argument("system size must be positive");
    if (d.observations.empty()) throw std::invalid_argument("dataset has no observations");
    const int s = d.s();
    for (std::size_t i = 0; i < d.observations.size(); ++i) {
        const auto& obs = d.observations[i];
        if (obs.depth() != s)
            throw std::invalid_argument("trial " + std::to_string(i + 1) +
                                        " has mismatched observation depth");
        try {
            validate(obs, d.n);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("trial " + std::to_string(i + 1) + ": " + e.what());
        }
    }
}

}  // namespace esos
