#include "esos/params.hpp"

namespace esos {

ParamTable ParamTable::constant(int n, int s, double value) {
    ParamTable t(n, s);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= s; ++k) t.set(j, k, value);
    return t;
}

ParamTable ParamTable::by_level(int n, const std::vector<double>& level_values) {
    ParamTable t(n, static_cast<int>(level_values.size()));
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= t.s(); ++k) t.set(j, k, level_values[k - 1]);
    return t;
}

double ParamTable::require(int j, int k) const {
    const auto v = at(j, k);
    if (!v)
        throw std::runtime_error("parameter alpha(" + std::to_string(j) + "," +
                                 std::to_string(k) + ") is missing");
    return *v;
}

void ParamTable::set(int j, int k, double value) {
    if (!(value > 0)) throw std::invalid_argument("alpha entries must be strictly positive");
    grid_.at(index(j, k)) = value;
}

bool ParamTable::complete() const {
    for (const auto& v : grid_)
        if (!v) return false;
    return true;
}

}  // namespace esos
