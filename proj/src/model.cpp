#include "esos/model.hpp"

#include <cmath>

namespace esos {

double cphr_hazard(double alpha, const BaselineSpec& b, int j, double t) {
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be strictly positive");
    return alpha * b.hazard(j, t);
}

namespace {

// Shared walk over the failure levels of one observation. `alpha_of(j, k,
// prefix)` supplies the stage parameter for a component j still alive at
// level k.
template <typename AlphaFn>
double log_density_impl(const Observation& obs, const BaselineSpec& b, AlphaFn&& alpha_of) {
    validate(obs, b.size());
    const int n = b.size();
    const int s = obs.depth();

    std::vector<bool> alive(n + 1, true);
    Prefix prefix;
    double ll = 0.0;
    double t_prev = 0.0;
    for (int k = 1; k <= s; ++k) {
        const double x = obs.times[k - 1];
        const int c = obs.sources[k - 1];
        ll += std::log(alpha_of(c, k, prefix)) + std::log(b.hazard(c, x));
        for (int j = 1; j <= n; ++j) {
            if (!alive[j]) continue;
            ll -= alpha_of(j, k, prefix) * b.delta(j, t_prev, x);
        }
        alive[c] = false;
        prefix.push_back(c);
        t_prev = x;
    }
    return ll;
}

}  // namespace

double esos_log_density(const Observation& obs, const ParamTable& p, const BaselineSpec& b) {
    return log_density_impl(obs, b,
                            [&](int j, int k, const Prefix&) { return p.require(j, k); });
}

double esos_log_density_sequence(const Observation& obs, const ParamTable& p,
                                 const BaselineSpec& b) {
    return log_density_impl(obs, b, [&](int j, int /*k*/, const Prefix& prefix) {
        const auto it = p.sequence.find(SeqKey{j, prefix});
        if (it == p.sequence.end())
            throw std::runtime_error("sequence parameter for component " + std::to_string(j) +
                                     " with observed prefix is missing");
        return it->second;
    });
}

double log_likelihood(const Dataset& d, const ParamTable& p, const BaselineSpec& b) {
    validate(d);
    double ll = 0.0;
    for (const auto& obs : d.observations) ll += esos_log_density(obs, p, b);
    return ll;
}

double log_likelihood_sequence(const Dataset& d, const ParamTable& p, const BaselineSpec& b) {
    validate(d);
    double ll = 0.0;
    for (const auto& obs : d.observations) ll += esos_log_density_sequence(obs, p, b);
    return ll;
}

}  // namespace esos
