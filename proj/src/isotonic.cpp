#include "esos/isotonic.hpp"

#include <stdexcept>

namespace esos {

std::vector<double> isotonic_nondecreasing(const WeightedSeries& series) {
    const std::size_t k = series.values.size();
    if (k == 0) throw std::invalid_argument("isotonic regression on empty series");
    if (series.weights.size() != k)
        throw std::invalid_argument("values and weights differ in length");
    for (double w : series.weights)
        if (!(w > 0)) throw std::invalid_argument("weights must be strictly positive");

    struct Block {
        double mean;
        double weight;
        std::size_t count;
    };
    std::vector<Block> blocks;
    blocks.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        blocks.push_back({series.values[i], series.weights[i], 1});
        // Merge backwards while the non-decreasing constraint is violated.
        while (blocks.size() > 1 && blocks[blocks.size() - 2].mean >= blocks.back().mean) {
            const Block b = blocks.back();
            blocks.pop_back();
            Block& a = blocks.back();
            a.mean = (a.mean * a.weight + b.mean * b.weight) / (a.weight + b.weight);
            a.weight += b.weight;
            a.count += b.count;
        }
    }

    std::vector<double> out;
    out.reserve(k);
    for (const Block& b : blocks) out.insert(out.end(), b.count, b.mean);
    return out;
}

}  // namespace esos
