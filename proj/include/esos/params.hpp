#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace esos {

// Failure-sequence prefix (c_1, ..., c_{k-1}) in observed order; empty for
// level 1.
using Prefix = std::vector<int>;

struct SeqKey {
    int component = 0;
    Prefix prefix;

    bool operator<(const SeqKey& o) const {
        if (component != o.component) return component < o.component;
        return prefix < o.prefix;
    }
    bool operator==(const SeqKey& o) const = default;
};

// The alpha_{j,k} grid (component x level). MISSING entries are represented
// as empty optionals, never as 0: a zero would poison the reciprocals used
// by the order-restricted projection. Sequence-keyed entries alpha_{j|pi}
// live alongside for the history-dependent model.
class ParamTable {
public:
    ParamTable() = default;
    ParamTable(int n, int s) : n_(n), s_(s), grid_(static_cast<std::size_t>(n) * s) {
        if (n < 1 || s < 1) throw std::invalid_argument("ParamTable dimensions must be positive");
    }

    static ParamTable constant(int n, int s, double value);
    // alpha_{j,k} = level_values[k-1] for every component (level-identified table).
    static ParamTable by_level(int n, const std::vector<double>& level_values);

    int n() const { return n_; }
    int s() const { return s_; }

    std::optional<double> at(int j, int k) const { return grid_.at(index(j, k)); }
    bool exists(int j, int k) const { return grid_.at(index(j, k)).has_value(); }
    double require(int j, int k) const;
    void set(int j, int k, double value);
    void clear(int j, int k) { grid_.at(index(j, k)).reset(); }

    bool complete() const;

    std::map<SeqKey, double> sequence;  // alpha_{j|pi}, keyed by (j, prefix)
    std::vector<int> counts;            // optional m_{j,k}, same layout as grid

private:
    std::size_t index(int j, int k) const {
        if (j < 1 || j > n_ || k < 1 || k > s_)
            throw std::out_of_range("ParamTable index (" + std::to_string(j) + "," +
                                    std::to_string(k) + ") out of range");
        return static_cast<std::size_t>(j - 1) * s_ + (k - 1);
    }

    int n_ = 0, s_ = 0;
    std::vector<std::optional<double>> grid_;
};

}  // namespace esos
