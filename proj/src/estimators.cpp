#include "esos/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "esos/isotonic.hpp"

namespace esos {

bool EstimateResult::all_exist() const {
    return params.n() > 0 && params.complete();
}

CountTable failure_counts(const Dataset& d) {
    validate(d);
    CountTable t;
    t.n = d.n;
    t.s = d.s();
    t.r = d.r();
    t.m.assign(static_cast<std::size_t>(t.n) * t.s, 0);
    t.fail_level.assign(t.r, std::vector<int>(t.n, 0));
    for (int i = 0; i < t.r; ++i) {
        const auto& obs = d.observations[i];
        Prefix prefix;
        for (int k = 1; k <= t.s; ++k) {
            const int c = obs.sources[k - 1];
            ++t.m[static_cast<std::size_t>(c - 1) * t.s + (k - 1)];
            ++t.sequence[SeqKey{c, prefix}];
            t.fail_level[i][c - 1] = k;
            prefix.push_back(c);
        }
    }
    return t;
}

namespace {

// Denominator of the unrestricted MLE: sum over trials of the log-survival
// increment of component j across level k, restricted to trials where j was
// still alive entering the level.
double level_exposure(const Dataset& d, const BaselineSpec& b, const CountTable& counts,
                      int j, int k) {
    double sum = 0.0;
    for (int i = 0; i < counts.r; ++i) {
        if (!counts.indicator(i, j, k - 1)) continue;
        const auto& obs = d.observations[i];
        const double t_prev = (k == 1) ? 0.0 : obs.times[k - 2];
        sum += b.delta(j, t_prev, obs.times[k - 1]);
    }
    return sum;
}

// A zero exposure alongside a positive count is impossible for valid
// continuous data, except in the location-scale fit where the trial
// attaining mu contributes a zero level-1 increment; there the estimate
// simply does not exist.
ParamTable unrestricted_grid(const Dataset& d, const BaselineSpec& b, const CountTable& counts,
                             bool zero_exposure_is_missing = false) {
    ParamTable p(counts.n, counts.s);
    p.counts = counts.m;
    for (int j = 1; j <= counts.n; ++j) {
        for (int k = 1; k <= counts.s; ++k) {
            const int m = counts.count(j, k);
            if (m == 0) continue;  // MISSING, not zero
            const double denom = level_exposure(d, b, counts, j, k);
            if (!(denom > 0)) {
                if (zero_exposure_is_missing) continue;
                throw std::logic_error("positive failure count with zero exposure for alpha(" +
                                       std::to_string(j) + "," + std::to_string(k) + ")");
            }
            p.set(j, k, m / denom);
        }
    }
    return p;
}

std::vector<bool> completeness(const ParamTable& p) {
    std::vector<bool> complete(p.n(), true);
    for (int j = 1; j <= p.n(); ++j)
        for (int k = 1; k <= p.s(); ++k)
            if (!p.exists(j, k)) complete[j - 1] = false;
    return complete;
}

EstimateResult make_result(EstimateMethod method, ParamTable params, CountTable counts) {
    EstimateResult res;
    res.method = method;
    res.component_complete = completeness(params);
    res.params = std::move(params);
    res.counts = std::move(counts);
    return res;
}

// Reversed-reciprocal isotonic projection of one component's unrestricted
// estimates; requires all levels present.
std::vector<double> project_component(const std::vector<double>& alpha,
                                      const std::vector<double>& weights) {
    const int s = static_cast<int>(alpha.size());
    WeightedSeries series;
    series.values.resize(s);
    series.weights.resize(s);
    for (int k = 0; k < s; ++k) {
        series.values[k] = 1.0 / alpha[s - 1 - k];
        series.weights[k] = weights[s - 1 - k];
    }
    const auto fitted = isotonic_nondecreasing(series);
    std::vector<double> out(s);
    for (int k = 0; k < s; ++k) out[s - 1 - k] = 1.0 / fitted[k];
    return out;
}

}  // namespace

namespace {

EstimateResult unrestricted_result(const Dataset& d, const BaselineSpec& b,
                                   bool zero_exposure_is_missing) {
    if (b.size() != d.n) throw std::invalid_argument("baseline size does not match dataset");
    const CountTable counts = failure_counts(d);
    return make_result(EstimateMethod::Unrestricted,
                       unrestricted_grid(d, b, counts, zero_exposure_is_missing), counts);
}

EstimateResult order_restricted_result(const Dataset& d, const BaselineSpec& b,
                                       bool zero_exposure_is_missing) {
    const EstimateResult unre = unrestricted_result(d, b, zero_exposure_is_missing);
    ParamTable p(unre.params.n(), unre.params.s());
    p.counts = unre.counts.m;
    for (int j = 1; j <= p.n(); ++j) {
        if (!unre.component_complete[j - 1]) continue;  // whole component MISSING
        std::vector<double> alpha(p.s()), weights(p.s());
        for (int k = 1; k <= p.s(); ++k) {
            alpha[k - 1] = unre.params.require(j, k);
            weights[k - 1] = unre.counts.count(j, k);
        }
        const auto restricted = project_component(alpha, weights);
        for (int k = 1; k <= p.s(); ++k) p.set(j, k, restricted[k - 1]);
    }
    return make_result(EstimateMethod::OrderRestricted, std::move(p), unre.counts);
}

}  // namespace

EstimateResult mle_unrestricted(const Dataset& d, const BaselineSpec& b) {
    return unrestricted_result(d, b, false);
}

EstimateResult mle_unrestricted_sequence(const Dataset& d, const BaselineSpec& b) {
    if (b.size() != d.n) throw std::invalid_argument("baseline size does not match dataset");
    const CountTable counts = failure_counts(d);
    ParamTable p(counts.n, counts.s);
    p.counts = counts.m;

    for (const auto& [key, m] : counts.sequence) {
        const int k = static_cast<int>(key.prefix.size()) + 1;
        double denom = 0.0;
        for (int i = 0; i < counts.r; ++i) {
            const auto& obs = d.observations[i];
            const Prefix observed(obs.sources.begin(), obs.sources.begin() + (k - 1));
            if (observed != key.prefix) continue;
            const double t_prev = (k == 1) ? 0.0 : obs.times[k - 2];
            denom += b.delta(key.component, t_prev, obs.times[k - 1]);
        }
        if (!(denom > 0))
            throw std::logic_error("observed sequence with zero exposure");
        p.sequence[key] = m / denom;
    }
    return make_result(EstimateMethod::Unrestricted, std::move(p), counts);
}

EstimateResult mle_order_restricted(const Dataset& d, const BaselineSpec& b) {
    return order_restricted_result(d, b, false);
}

PooledEstimates mle_pooled_sos(const Dataset& d, const BaselineSpec& b) {
    if (b.size() != d.n) throw std::invalid_argument("baseline size does not match dataset");
    const CountTable counts = failure_counts(d);
    const int s = counts.s;
    PooledEstimates out;
    out.unrestricted.resize(s);
    std::vector<double> weights(s, static_cast<double>(counts.r));
    for (int k = 1; k <= s; ++k) {
        double denom = 0.0;
        for (int j = 1; j <= counts.n; ++j) denom += level_exposure(d, b, counts, j, k);
        // Numerator is sum_j m_{j,k} = r, always positive.
        out.unrestricted[k - 1] = counts.r / denom;
    }
    out.restricted = project_component(out.unrestricted, weights);
    return out;
}

EstimateResult mle_scale_family(const Dataset& d, const TransformSpec& g) {
    // lambda is not identifiable; pin it to 1 so the estimates target
    // lambda*alpha.
    const BaselineSpec b = BaselineSpec::scale(d.n, g, 1.0);
    EstimateResult res = mle_unrestricted(d, b);
    res.method = EstimateMethod::ScaleFamily;
    return res;
}

LocationScaleFit mle_location_scale(const Dataset& d, const TransformSpec& g) {
    validate(d);
    double mu = std::numeric_limits<double>::infinity();
    for (const auto& obs : d.observations) mu = std::min(mu, g(obs.times[0]));

    LocationScaleFit fit;
    fit.mu = mu;
    fit.baseline = BaselineSpec::location_scale(d.n, g, mu);
    fit.unrestricted = unrestricted_result(d, fit.baseline, true);
    fit.unrestricted.method = EstimateMethod::LocationScale;
    fit.unrestricted.mu = mu;
    fit.unrestricted.has_mu = true;
    fit.restricted = order_restricted_result(d, fit.baseline, true);
    fit.restricted.method = EstimateMethod::LocationScale;
    fit.restricted.mu = mu;
    fit.restricted.has_mu = true;
    return fit;
}

}  // namespace esos
