#include "esos/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esos {

namespace {

// Kahan-compensated accumulator for order-independent aggregation.
struct Accumulator {
    double sum = 0.0, comp = 0.0;
    double sumsq = 0.0, compsq = 0.0;
    long count = 0;

    void add(double x) {
        ++count;
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        y = x * x - compsq;
        t = sumsq + y;
        compsq = (t - sumsq) - y;
        sumsq = t;
    }
    double mean() const { return count ? sum / count : 0.0; }
    double sd() const {
        if (count < 2) return 0.0;
        const double m = mean();
        const double var = (sumsq - count * m * m) / (count - 1);
        return var > 0 ? std::sqrt(var) : 0.0;
    }
};

}  // namespace

const SummaryEntry& SummaryTable::entry(int component, int level) const {
    for (const auto& e : entries)
        if (e.component == component && e.level == level) return e;
    throw std::out_of_range("no summary entry for requested component/level");
}

SummaryTable mc_estimate_summary(const ScenarioSpec& spec, int r, int reps) {
    spec.validate();
    if (reps < 1) throw std::invalid_argument("reps must be positive");
    const int n = spec.n, s = spec.s;

    std::vector<Accumulator> unre(static_cast<std::size_t>(n) * s);
    std::vector<Accumulator> rest(static_cast<std::size_t>(n) * s);
    long all_exist = 0;

    for (int rep = 0; rep < reps; ++rep) {
        const Dataset d = sample_dataset(spec, r, substream_seed(spec.seed, rep));
        const EstimateResult u = mle_unrestricted(d, spec.baseline);
        const EstimateResult o = mle_order_restricted(d, spec.baseline);
        if (o.all_exist()) ++all_exist;
        for (int j = 1; j <= n; ++j) {
            for (int k = 1; k <= s; ++k) {
                const std::size_t idx = static_cast<std::size_t>(j - 1) * s + (k - 1);
                if (const auto v = u.params.at(j, k)) unre[idx].add(*v);
                if (const auto v = o.params.at(j, k)) rest[idx].add(*v);
            }
        }
    }

    SummaryTable table;
    table.reps = reps;
    table.r = r;
    table.prop_all_exist = static_cast<double>(all_exist) / reps;
    for (int j = 1; j <= n; ++j) {
        for (int k = 1; k <= s; ++k) {
            const std::size_t idx = static_cast<std::size_t>(j - 1) * s + (k - 1);
            SummaryEntry e;
            e.component = j;
            e.level = k;
            e.mean_unrestricted = unre[idx].mean();
            e.sd_unrestricted = unre[idx].sd();
            e.prop_unrestricted = static_cast<double>(unre[idx].count) / reps;
            e.mean_restricted = rest[idx].mean();
            e.sd_restricted = rest[idx].sd();
            e.prop_restricted = static_cast<double>(rest[idx].count) / reps;
            table.entries.push_back(e);
        }
    }
    return table;
}

CurveData kde_curve(const std::vector<double>& samples, std::vector<double> grid) {
    const auto m = samples.size();
    if (m < 2) throw std::invalid_argument("kernel density estimate needs at least two samples");
    Accumulator acc;
    for (double x : samples) acc.add(x);
    const double sd = acc.sd();
    if (!(sd > 0)) throw std::invalid_argument("samples have zero spread");
    const double h = 1.06 * sd * std::pow(static_cast<double>(m), -0.2);

    CurveData curve;
    curve.bandwidth = h;
    curve.sample_count = static_cast<int>(m);
    if (grid.empty()) {
        const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
        const double lo = *lo_it - 3.0 * h, hi = *hi_it + 3.0 * h;
        grid.resize(512);
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = lo + (hi - lo) * static_cast<double>(i) / (grid.size() - 1);
    } else {
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (!(grid[i] > grid[i - 1]))
                throw std::invalid_argument("grid must be strictly increasing");
    }

    const double norm = 1.0 / (m * h * std::sqrt(2.0 * M_PI));
    curve.density.reserve(grid.size());
    for (double x : grid) {
        double f = 0.0;
        for (double xi : samples) {
            const double z = (x - xi) / h;
            f += std::exp(-0.5 * z * z);
        }
        curve.density.push_back(norm * f);
    }
    curve.grid = std::move(grid);
    return curve;
}

namespace {

double summed_relative_bias(const ScenarioSpec& spec, int r, int reps) {
    const SummaryTable table = mc_estimate_summary(spec, r, reps);
    double sum = 0.0;
    for (int k = 1; k <= spec.s; ++k) {
        const double truth = spec.alpha.require(1, k);
        sum += std::abs(table.entry(1, k).mean_restricted - truth) / truth;
    }
    return sum;
}

}  // namespace

std::vector<SweepRow> proportionality_sweep(const ScenarioSpec& base, int r,
                                            const std::vector<double>& p_values, int reps) {
    std::vector<SweepRow> rows;
    rows.reserve(p_values.size());
    for (std::size_t i = 0; i < p_values.size(); ++i) {
        ScenarioSpec spec = base;
        spec.alpha = alpha_within_factor(base.n, base.s, p_values[i]);
        spec.seed = substream_seed(base.seed, i);
        rows.push_back({p_values[i], std::nan(""), summed_relative_bias(spec, r, reps)});
    }
    return rows;
}

std::vector<SweepRow> proportionality_sweep_grid(const ScenarioSpec& base, int r,
                                                 const std::vector<double>& p1_values,
                                                 const std::vector<double>& p2_values, int reps) {
    if (base.s != 3)
        throw std::invalid_argument("two-factor sweep requires observation depth 3");
    std::vector<SweepRow> rows;
    rows.reserve(p1_values.size() * p2_values.size());
    std::size_t idx = 0;
    for (double p1 : p1_values) {
        for (double p2 : p2_values) {
            ScenarioSpec spec = base;
            spec.alpha = alpha_level_factors(base.n, p1, p2);
            spec.seed = substream_seed(base.seed, idx++);
            rows.push_back({p1, p2, summed_relative_bias(spec, r, reps)});
        }
    }
    return rows;
}

std::vector<ExistenceRow> existence_study(const ScenarioSpec& base, double within_p,
                                          const std::vector<double>& ptilde_values,
                                          const std::vector<int>& r_values, int reps) {
    std::vector<ExistenceRow> rows;
    std::size_t idx = 0;
    for (double ptilde : ptilde_values) {
        for (int r : r_values) {
            ScenarioSpec spec = base;
            spec.alpha = alpha_between_factor(base.n, base.s, within_p, ptilde);
            spec.seed = substream_seed(base.seed, idx++);
            long exist = 0;
            for (int rep = 0; rep < reps; ++rep) {
                const Dataset d = sample_dataset(spec, r, substream_seed(spec.seed, rep));
                // Existence only depends on the counts: component j's
                // estimates exist iff all its level counts are positive. The
                // proportion averages over (replicate, component) pairs.
                const CountTable counts = failure_counts(d);
                for (int j = 1; j <= spec.n; ++j) {
                    bool all = true;
                    for (int k = 1; k <= spec.s && all; ++k)
                        if (counts.count(j, k) == 0) all = false;
                    if (all) ++exist;
                }
            }
            rows.push_back({ptilde, r, static_cast<double>(exist) / (reps * spec.n)});
        }
    }
    return rows;
}

double distance_to_null(const ParamTable& alpha) {
    double sq = 0.0;
    for (int k = 1; k <= alpha.s(); ++k) {
        double mean = 0.0;
        for (int j = 1; j <= alpha.n(); ++j) mean += alpha.require(j, k);
        mean /= alpha.n();
        for (int j = 1; j <= alpha.n(); ++j) {
            const double dev = alpha.require(j, k) - mean;
            sq += dev * dev;
        }
    }
    return std::sqrt(sq);
}

std::vector<PowerCombo> power_combos(PowerDesign design, int n, int count, std::uint64_t seed) {
    std::vector<PowerCombo> combos;
    combos.reserve(count);
    for (int i = 0; i < count; ++i) {
        auto rng = substream(seed, i);
        std::uniform_real_distribution<double> lvl1(0.1, 2.0);
        std::uniform_real_distribution<double> lvl2(0.5, 4.0);
        ParamTable alpha(n, 2);
        if (design == PowerDesign::Level1) {
            double maxi = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double a = lvl1(rng);
                alpha.set(j, 1, a);
                maxi = std::max(maxi, a);
            }
            for (int j = 1; j <= n; ++j) alpha.set(j, 2, maxi);
        } else {
            for (int j = 1; j <= n; ++j) {
                alpha.set(j, 1, 0.5);
                alpha.set(j, 2, lvl2(rng));
            }
        }
        PowerCombo combo;
        combo.distance = distance_to_null(alpha);
        combo.alpha = std::move(alpha);
        combos.push_back(std::move(combo));
    }
    return combos;
}

std::vector<PowerRow> power_study(const ScenarioSpec& base, const std::vector<PowerCombo>& combos,
                                  const std::vector<int>& r_values, int reps, int null_sims,
                                  double level) {
    std::vector<PowerRow> rows;
    std::size_t stream = 0;
    for (int r : r_values) {
        for (const auto& combo : combos) {
            const std::uint64_t combo_seed = substream_seed(base.seed, stream++);

            // Null quantiles at the H0 projection of the combo (level means).
            ScenarioSpec h0 = base;
            std::vector<double> level_means(base.s);
            for (int k = 1; k <= base.s; ++k) {
                double m = 0.0;
                for (int j = 1; j <= base.n; ++j) m += combo.alpha.require(j, k);
                level_means[k - 1] = m / base.n;
            }
            h0.alpha = ParamTable::by_level(base.n, level_means);
            const QuantileTable q = simulate_null_quantiles(h0, r, null_sims, {1.0 - level},
                                                            substream_seed(combo_seed, 0));

            ScenarioSpec alt = base;
            alt.alpha = combo.alpha;
            long rejected = 0, tested = 0;
            for (int rep = 0; rep < reps; ++rep) {
                const Dataset d =
                    sample_dataset(alt, r, substream_seed(substream_seed(combo_seed, 1), rep));
                try {
                    const LrtResult res = lrt_test(d, base.baseline, level, q);
                    ++tested;
                    if (res.reject) ++rejected;
                } catch (const std::runtime_error&) {
                    // estimates do not exist; replicate dropped
                }
            }
            rows.push_back(
                {combo.distance, tested ? static_cast<double>(rejected) / tested : 0.0, r});
        }
    }
    return rows;
}

std::vector<double> running_mean(const std::vector<double>& xs, int window) {
    if (window < 1) throw std::invalid_argument("window must be positive");
    std::vector<double> out;
    out.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::size_t lo = i + 1 >= static_cast<std::size_t>(window) ? i + 1 - window : 0;
        double sum = 0.0;
        for (std::size_t j = lo; j <= i; ++j) sum += xs[j];
        out.push_back(sum / (i - lo + 1));
    }
    return out;
}

}  // namespace esos
