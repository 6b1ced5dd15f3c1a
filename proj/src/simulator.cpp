#include "esos/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esos {

void ScenarioSpec::validate() const {
    if (n < 1 || s < 1 || s > n)
        throw std::invalid_argument("scenario requires n >= s >= 1");
    if (baseline.size() != n)
        throw std::invalid_argument("baseline size does not match scenario n");
    if (sequence_keyed()) {
        // Every reachable (component, prefix) must have a parameter; a
        // missing one is a configuration error, caught here rather than
        // mid-draw. Reachable prefixes are all k-permutations, k < s.
        std::vector<Prefix> frontier{Prefix{}};
        for (int k = 1; k <= s; ++k) {
            std::vector<Prefix> next;
            for (const auto& prefix : frontier) {
                for (int j = 1; j <= n; ++j) {
                    if (std::find(prefix.begin(), prefix.end(), j) != prefix.end()) continue;
                    if (!alpha_seq.count(SeqKey{j, prefix}))
                        throw std::invalid_argument(
                            "sequence-keyed scenario is missing a parameter for component " +
                            std::to_string(j) + " at level " + std::to_string(k));
                    if (k < s) {
                        Prefix p = prefix;
                        p.push_back(j);
                        next.push_back(std::move(p));
                    }
                }
            }
            frontier = std::move(next);
        }
        for (const auto& [key, v] : alpha_seq)
            if (!(v > 0)) throw std::invalid_argument("alpha entries must be strictly positive");
    } else {
        if (alpha.n() != n || alpha.s() != s)
            throw std::invalid_argument("alpha table does not match scenario dimensions");
        if (!alpha.complete())
            throw std::invalid_argument("scenario alpha table has missing entries");
    }
}

double sample_conditional_failure(const BaselineSpec& b, int j, double alpha, double t_prev,
                                  double u) {
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be strictly positive");
    if (!(u > 0.0) || !(u < 1.0)) throw std::invalid_argument("u must lie in (0,1)");
    const double ls_prev = (t_prev == 0.0) ? 0.0 : b.log_survival(j, t_prev);
    return b.invert_log_survival(j, ls_prev + std::log(u) / alpha);
}

Observation sample_system(const ScenarioSpec& spec, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto draw_u = [&] {
        double u;
        do {
            u = unif(rng);
        } while (u <= 0.0 || u >= 1.0);
        return u;
    };

    Observation obs;
    obs.times.reserve(spec.s);
    obs.sources.reserve(spec.s);
    std::vector<bool> alive(spec.n + 1, true);
    Prefix prefix;
    double t_prev = 0.0;
    for (int k = 1; k <= spec.s; ++k) {
        double best_time = 0.0;
        int best_comp = 0;
        for (int j = 1; j <= spec.n; ++j) {
            if (!alive[j]) continue;
            const double a = spec.sequence_keyed() ? spec.alpha_seq.at(SeqKey{j, prefix})
                                                   : spec.alpha.require(j, k);
            const double start = spec.baseline.start_time(j);
            const double from = std::max(t_prev, start);
            const double t =
                sample_conditional_failure(spec.baseline, j, a, from == 0.0 ? 0.0 : from, draw_u());
            if (best_comp == 0 || t < best_time) {
                best_time = t;
                best_comp = j;
            }
        }
        obs.times.push_back(best_time);
        obs.sources.push_back(best_comp);
        alive[best_comp] = false;
        prefix.push_back(best_comp);
        t_prev = best_time;
    }
    return obs;
}

Dataset sample_dataset(const ScenarioSpec& spec, int r, std::uint64_t master_seed) {
    spec.validate();
    if (r < 1) throw std::invalid_argument("dataset size r must be positive");
    Dataset d;
    d.n = spec.n;
    d.observations.reserve(r);
    for (int i = 0; i < r; ++i) {
        auto rng = substream(master_seed, static_cast<std::uint64_t>(i));
        d.observations.push_back(sample_system(spec, rng));
    }
    return d;
}

ParamTable alpha_within_factor(int n, int s, double p, double a1) {
    if (!(p > 0) || !(a1 > 0)) throw std::invalid_argument("factors must be positive");
    ParamTable t(n, s);
    for (int j = 1; j <= n; ++j) {
        double a = a1;
        for (int k = 1; k <= s; ++k) {
            t.set(j, k, a);
            a *= p;
        }
    }
    return t;
}

ParamTable alpha_level_factors(int n, double p1, double p2, double a1) {
    if (!(p1 > 0) || !(p2 > 0) || !(a1 > 0))
        throw std::invalid_argument("factors must be positive");
    ParamTable t(n, 3);
    for (int j = 1; j <= n; ++j) {
        t.set(j, 1, a1);
        t.set(j, 2, p1 * a1);
        t.set(j, 3, p2 * p1 * a1);
    }
    return t;
}

ParamTable alpha_between_factor(int n, int s, double p, double ptilde) {
    if (!(p > 0) || !(ptilde > 0)) throw std::invalid_argument("factors must be positive");
    ParamTable t(n, s);
    double base = 1.0;
    for (int j = 1; j <= n; ++j) {
        double a = base;
        for (int k = 1; k <= s; ++k) {
            t.set(j, k, a);
            a *= p;
        }
        base *= ptilde;
    }
    return t;
}

}  // namespace esos
