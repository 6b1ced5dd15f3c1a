#pragma once

#include <cstdint>
#include <random>

namespace esos {

// splitmix64; used to derive statistically independent substreams from a
// master seed so replicate results do not depend on execution order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seed for substream `index` of stream `master`.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

inline std::mt19937_64 substream(std::uint64_t master, std::uint64_t index) {
    return std::mt19937_64(substream_seed(master, index));
}

}  // namespace esos
