#include "esos/inference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "esos/model.hpp"

namespace esos {

double QuantileTable::value_at(double prob) const {
    for (std::size_t i = 0; i < probs.size(); ++i)
        if (std::abs(probs[i] - prob) < 1e-12) return values[i];
    throw std::invalid_argument("probability level not present in quantile table");
}

double lrt_statistic(const Dataset& d, const BaselineSpec& b) {
    const EstimateResult full = mle_order_restricted(d, b);
    if (!full.all_exist())
        throw std::runtime_error(
            "order-restricted estimates do not exist for every component; test not computable");
    const PooledEstimates pooled = mle_pooled_sos(d, b);
    const ParamTable restricted = ParamTable::by_level(d.n, pooled.restricted);

    const double ll_full = log_likelihood(d, full.params, b);
    const double ll_restricted = log_likelihood(d, restricted, b);
    double t = -2.0 * (ll_restricted - ll_full);
    if (t < 0.0) {
        if (t < -1e-9) throw std::logic_error("negative likelihood-ratio statistic");
        t = 0.0;  // roundoff clamp
    }
    return t;
}

QuantileTable simulate_null_quantiles(const ScenarioSpec& spec_h0, int r, int n_sim,
                                      std::vector<double> probs, std::uint64_t seed) {
    spec_h0.validate();
    if (spec_h0.sequence_keyed())
        throw std::invalid_argument("null simulation requires a level-identified alpha table");
    for (int k = 1; k <= spec_h0.s; ++k)
        for (int j = 2; j <= spec_h0.n; ++j)
            if (spec_h0.alpha.require(j, k) != spec_h0.alpha.require(1, k))
                throw std::invalid_argument("null scenario must have identical components per level");
    if (n_sim < 1) throw std::invalid_argument("n_sim must be positive");
    std::sort(probs.begin(), probs.end());
    for (double p : probs)
        if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("probs must lie in (0,1)");

    std::vector<double> stats;
    stats.reserve(n_sim);
    int dropped = 0;
    for (int i = 0; i < n_sim; ++i) {
        const Dataset d = sample_dataset(spec_h0, r, substream_seed(seed, i));
        try {
            stats.push_back(lrt_statistic(d, spec_h0.baseline));
        } catch (const std::runtime_error&) {
            ++dropped;
        }
    }
    if (stats.empty()) throw std::runtime_error("all null replicates were dropped");
    std::sort(stats.begin(), stats.end());

    QuantileTable q;
    q.probs = probs;
    q.simulations = static_cast<int>(stats.size());
    q.dropped = dropped;
    q.reliable = dropped <= 0.2 * n_sim;
    for (double p : probs) {
        // Order-statistic (type-1) quantile: deterministic given the sample.
        const auto idx = static_cast<std::size_t>(
            std::max<long>(0, static_cast<long>(std::ceil(p * stats.size())) - 1));
        q.values.push_back(stats[std::min(idx, stats.size() - 1)]);
    }
    return q;
}

LrtResult lrt_test(const Dataset& d, const BaselineSpec& b, double level,
                   const QuantileTable& quantiles) {
    if (!(level > 0.0) || !(level < 1.0)) throw std::invalid_argument("level must lie in (0,1)");
    LrtResult res;
    res.statistic = lrt_statistic(d, b);
    res.quantiles = quantiles;
    res.level = level;
    res.critical_value = quantiles.value_at(1.0 - level);
    res.reject = res.statistic > res.critical_value;
    return res;
}

LrtResult lrt_bootstrap(const Dataset& d, const BaselineSpec& b, double level, int n_sim,
                        std::vector<double> probs, std::uint64_t seed) {
    const PooledEstimates pooled = mle_pooled_sos(d, b);
    ScenarioSpec h0;
    h0.n = d.n;
    h0.s = d.s();
    h0.baseline = b;
    h0.alpha = ParamTable::by_level(d.n, pooled.restricted);
    h0.seed = seed;
    if (std::find(probs.begin(), probs.end(), 1.0 - level) == probs.end())
        probs.push_back(1.0 - level);
    const QuantileTable q = simulate_null_quantiles(h0, d.r(), n_sim, std::move(probs), seed);
    return lrt_test(d, b, level, q);
}

}  // namespace esos
