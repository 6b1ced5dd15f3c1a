// Acceptance harness: one line per criterion, nonzero exit on any failure.
// Pass --full to run the Monte Carlo reproduction at its original replicate
// count instead of the desk-scale default.

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "esos/experiments.hpp"
#include "esos/inference.hpp"
#include "esos/io.hpp"
#include "esos/model.hpp"
#include "fixtures.hpp"

using namespace esos;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": " << name;
    if (!ok && !detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
    if (!ok) ++failures;
}

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol; }

// ---------------------------------------------------------------- criterion 1

bool criterion1(std::string& detail) {
    std::istringstream csv(testing::example_2of3_csv());
    const Dataset d = io::parse_dataset_csv(csv);
    const auto b = BaselineSpec::exponential(3, 1.0);
    const auto unre = mle_unrestricted(d, b);

    // hand-summed denominators: level-1 exposure is the total of the first
    // failure times (1.64 for every component); level-2 exposures cover only
    // trials where the component survived level 1
    struct Cell {
        int j, k;
        double oracle;
    };
    const std::vector<Cell> cells{{1, 1, 6.0 / 1.64}, {2, 1, 3.0 / 1.64}, {3, 1, 1.0 / 1.64},
                                  {1, 2, 3.0 / 0.89}, {2, 2, 5.0 / 2.80}, {3, 2, 2.0 / 2.47}};
    for (const auto& c : cells) {
        const double got = unre.params.require(c.j, c.k);
        if (!near(got, c.oracle, 1e-9)) {
            std::ostringstream os;
            os << "alpha(" << c.j << "," << c.k << ") = " << got << ", oracle " << c.oracle;
            detail = os.str();
            return false;
        }
    }
    // coarser two-decimal reference values
    const std::vector<Cell> rounded{{1, 1, 3.65}, {3, 1, 0.61}, {1, 2, 3.34}, {3, 2, 0.82}};
    for (const auto& c : rounded)
        if (!near(unre.params.require(c.j, c.k), c.oracle, 0.04)) {
            detail = "two-decimal reference value mismatch";
            return false;
        }
    return true;
}

// ---------------------------------------------------------------- criterion 2

bool criterion2(std::string& detail) {
    std::mt19937_64 rng(20240501);
    std::uniform_int_distribution<int> pick_n(2, 4);
    std::uniform_int_distribution<int> pick_r(15, 30);
    std::uniform_real_distribution<double> pick_alpha(0.5, 2.5);
    std::uniform_real_distribution<double> pick_table(0.05, 5.0);

    for (int it = 0; it < 1000; ++it) {
        ScenarioSpec spec;
        spec.n = pick_n(rng);
        spec.s = std::uniform_int_distribution<int>(1, std::min(3, spec.n))(rng);
        spec.baseline = BaselineSpec::exponential(spec.n, 1.0);
        spec.alpha = ParamTable(spec.n, spec.s);
        for (int j = 1; j <= spec.n; ++j)
            for (int k = 1; k <= spec.s; ++k) spec.alpha.set(j, k, pick_alpha(rng));
        const int r = pick_r(rng);

        Dataset d;
        EstimateResult unre, restr;
        bool found = false;
        for (int attempt = 0; attempt < 200 && !found; ++attempt) {
            d = sample_dataset(spec, r, rng());
            unre = mle_unrestricted(d, spec.baseline);
            if (!unre.all_exist()) continue;
            restr = mle_order_restricted(d, spec.baseline);
            found = true;
        }
        if (!found) continue;  // pathological corner; existence is criterion 5's job

        for (int j = 1; j <= spec.n; ++j) {
            bool ordered = true;
            for (int k = 2; k <= spec.s; ++k) {
                if (restr.params.require(j, k) < restr.params.require(j, k - 1) - 1e-9) {
                    detail = "order-restricted fit not monotone";
                    return false;
                }
                if (unre.params.require(j, k) < unre.params.require(j, k - 1)) ordered = false;
            }
            if (ordered)
                for (int k = 1; k <= spec.s; ++k)
                    if (!near(restr.params.require(j, k), unre.params.require(j, k), 1e-9)) {
                        detail = "ordered unrestricted estimates were altered";
                        return false;
                    }
        }

        const double ll_or = log_likelihood(d, restr.params, spec.baseline);
        ParamTable candidate(spec.n, spec.s);
        for (int table = 0; table < 1000; ++table) {
            for (int j = 1; j <= spec.n; ++j) {
                std::vector<double> vals(spec.s);
                for (auto& v : vals) v = pick_table(rng);
                std::sort(vals.begin(), vals.end());
                for (int k = 1; k <= spec.s; ++k) candidate.set(j, k, vals[k - 1]);
            }
            if (log_likelihood(d, candidate, spec.baseline) > ll_or + 1e-9) {
                std::ostringstream os;
                os << "random order-respecting table beat the OR fit at iteration " << it;
                detail = os.str();
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 3

double weighted_sse(const WeightedSeries& s, const std::vector<double>& fit) {
    double sse = 0.0;
    for (std::size_t i = 0; i < fit.size(); ++i) {
        const double dv = fit[i] - s.values[i];
        sse += s.weights[i] * dv * dv;
    }
    return sse;
}

// Smallest weighted SSE over all non-decreasing tuples drawn from `grid`.
double best_grid_sse(const WeightedSeries& s, const std::vector<double>& grid) {
    const int k = static_cast<int>(s.values.size());
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> tuple(k);
    const std::size_t g = grid.size();
    // enumerate non-decreasing index tuples
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        for (int i = 0; i < k; ++i) tuple[i] = grid[idx[i]];
        best = std::min(best, weighted_sse(s, tuple));
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == g - 1) --pos;
        if (pos < 0) break;
        const std::size_t next = idx[pos] + 1;
        for (int i = pos; i < k; ++i) idx[i] = next;
    }
    return best;
}

bool criterion3(std::string& detail) {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> val(-2.0, 2.0);
    std::uniform_real_distribution<double> wt(0.1, 5.0);

    for (int it = 0; it < 2000; ++it) {
        const int k = std::uniform_int_distribution<int>(1, 12)(rng);
        WeightedSeries s;
        for (int i = 0; i < k; ++i) {
            s.values.push_back(val(rng));
            s.weights.push_back(wt(rng));
        }
        const auto fit = isotonic_nondecreasing(s);
        const auto oracle = testing::isotonic_maxmin(s);
        for (int i = 0; i < k; ++i)
            if (!near(fit[i], oracle[i], 1e-10)) {
                detail = "max-min formula disagreement";
                return false;
            }
    }

    for (int it = 0; it < 25; ++it) {
        const int k = std::uniform_int_distribution<int>(1, 5)(rng);
        WeightedSeries s;
        double lo = 1e9, hi = -1e9;
        for (int i = 0; i < k; ++i) {
            s.values.push_back(val(rng));
            s.weights.push_back(wt(rng));
            lo = std::min(lo, s.values.back());
            hi = std::max(hi, s.values.back());
        }
        std::vector<double> grid;
        const int points = 21;
        for (int i = 0; i < points; ++i) grid.push_back(lo + (hi - lo) * i / (points - 1));
        const double pava_sse = weighted_sse(s, isotonic_nondecreasing(s));
        if (pava_sse > best_grid_sse(s, grid) + 1e-12) {
            detail = "grid search found a better monotone fit";
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 4

bool criterion4(std::string& detail, bool full) {
    ScenarioSpec spec;
    spec.n = 4;
    spec.s = 3;
    spec.baseline = BaselineSpec::exponential(4, 1.0);
    spec.alpha = ParamTable::by_level(4, {2.0, 2.5, 2.75});
    spec.seed = 46;
    const int reps = full ? 10000 : 2000;

    const SummaryTable at50 = mc_estimate_summary(spec, 50, reps);
    const double want_unre[] = {2.04, 2.58, 2.90};
    const double want_rest[] = {1.96, 2.52, 3.08};
    for (int k = 1; k <= 3; ++k) {
        const auto& e = at50.entry(1, k);
        if (!near(e.mean_unrestricted, want_unre[k - 1], 0.06) ||
            !near(e.mean_restricted, want_rest[k - 1], 0.06)) {
            std::ostringstream os;
            os << "r=50 level " << k << ": unrestricted " << e.mean_unrestricted
               << " (want " << want_unre[k - 1] << "), restricted " << e.mean_restricted
               << " (want " << want_rest[k - 1] << ")";
            detail = os.str();
            return false;
        }
    }

    spec.seed = 47;
    const SummaryTable at25 = mc_estimate_summary(spec, 25, reps);
    for (const auto* table : {&at25, &at50}) {
        for (int k = 1; k <= 3; ++k) {
            const auto& e = table->entry(1, k);
            if (!(e.sd_restricted < e.sd_unrestricted)) {
                std::ostringstream os;
                os << "r=" << table->r << " level " << k << ": restricted sd " << e.sd_restricted
                   << " not below unrestricted sd " << e.sd_unrestricted;
                detail = os.str();
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 5

bool criterion5(std::string& detail) {
    ScenarioSpec base;
    base.n = 4;
    base.s = 3;
    base.baseline = BaselineSpec::exponential(4, 1.0);
    base.alpha = ParamTable::constant(4, 3, 1.0);  // replaced per grid point
    base.seed = 58;
    const auto rows = existence_study(base, 1.5, {1.0, 1.5, 2.0}, {5, 10, 25}, 10000);

    auto cell = [&](double ptilde, int r) {
        for (const auto& row : rows)
            if (row.ptilde == ptilde && row.r == r) return row.proportion;
        throw std::logic_error("missing existence cell");
    };
    if (!near(cell(1.0, 10), 0.8334, 0.02)) {
        std::ostringstream os;
        os << "proportion at (1, 10) = " << cell(1.0, 10) << ", want 0.8334 +- 0.02";
        detail = os.str();
        return false;
    }
    if (!near(cell(2.0, 5), 0.3068, 0.02)) {
        std::ostringstream os;
        os << "proportion at (2, 5) = " << cell(2.0, 5) << ", want 0.3068 +- 0.02";
        detail = os.str();
        return false;
    }
    for (int r : {5, 10, 25})
        if (!(cell(1.0, r) >= cell(1.5, r) && cell(1.5, r) >= cell(2.0, r))) {
            detail = "proportion not non-increasing in the between-component factor";
            return false;
        }
    return true;
}

// ---------------------------------------------------------------- criterion 6

bool criterion6(std::string& detail) {
    // identical components: every failure order is equally likely
    {
        ScenarioSpec spec;
        spec.n = 3;
        spec.s = 3;
        spec.baseline = BaselineSpec::exponential(3, 1.0);
        spec.alpha = ParamTable::by_level(3, {1.0, 1.5, 2.0});
        const int reps = 100000;
        const Dataset d = sample_dataset(spec, reps, 606);
        std::map<std::vector<int>, int> orders;
        for (const auto& obs : d.observations) ++orders[obs.sources];
        if (orders.size() != 6) {
            detail = "did not observe all 6 failure orders";
            return false;
        }
        for (const auto& [order, count] : orders) {
            const double p = static_cast<double>(count) / reps;
            if (!near(p, 1.0 / 6.0, 0.01)) {
                std::ostringstream os;
                os << "failure-order frequency " << p << " deviates from 1/6";
                detail = os.str();
                return false;
            }
        }
    }

    // first failure time: minimum of independent exponentials
    {
        ScenarioSpec spec;
        spec.n = 3;
        spec.s = 1;
        spec.baseline = BaselineSpec::exponential({0.5, 1.0, 1.5});
        spec.alpha = ParamTable::constant(3, 1, 1.3);
        const int reps = 100000;
        const double rate = 1.3 * (0.5 + 1.0 + 1.5);
        const Dataset d = sample_dataset(spec, reps, 607);
        std::vector<double> xs;
        xs.reserve(reps);
        for (const auto& obs : d.observations) xs.push_back(obs.times[0]);
        std::sort(xs.begin(), xs.end());
        double ks = 0.0;
        for (int i = 0; i < reps; ++i) {
            const double F = 1.0 - std::exp(-rate * xs[i]);
            ks = std::max(ks, std::abs((i + 1.0) / reps - F));
            ks = std::max(ks, std::abs(F - static_cast<double>(i) / reps));
        }
        const double critical = 1.628 / std::sqrt(static_cast<double>(reps));  // 1% level
        if (ks >= critical) {
            std::ostringstream os;
            os << "KS statistic " << ks << " exceeds the 1% critical value " << critical;
            detail = os.str();
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- criterion 7

bool criterion7(std::string& detail) {
    ScenarioSpec h0;
    h0.n = 3;
    h0.s = 2;
    h0.baseline = BaselineSpec::exponential(3, 1.0);
    h0.alpha = ParamTable::by_level(3, {1.0, 1.5});
    const int r = 50;

    // empirical size over fresh null data
    const QuantileTable q = simulate_null_quantiles(h0, r, 20000, {0.95}, 7001);
    long rejected = 0, tested = 0;
    for (int rep = 0; rep < 10000; ++rep) {
        const Dataset d = sample_dataset(h0, r, substream_seed(7002, rep));
        try {
            if (lrt_test(d, h0.baseline, 0.05, q).reject) ++rejected;
            ++tested;
        } catch (const std::runtime_error&) {
        }
    }
    const double size = static_cast<double>(rejected) / tested;
    if (!near(size, 0.05, 0.01)) {
        std::ostringstream os;
        os << "empirical size " << size << " outside 0.05 +- 0.01";
        detail = os.str();
        return false;
    }

    ScenarioSpec base = h0;
    base.seed = 7100;

    // a combination at the null: power equals the level
    PowerCombo at_null;
    at_null.alpha = ParamTable::by_level(3, {0.8, 0.8});
    at_null.distance = 0.0;
    const auto null_rows = power_study(base, {at_null}, {50}, 2000, 5000);
    if (!near(null_rows[0].power, 0.05, 0.015)) {
        std::ostringstream os;
        os << "power at zero distance = " << null_rows[0].power << ", want 0.05 +- 0.015";
        detail = os.str();
        return false;
    }

    // sample size raises power at the far end of the distance range
    auto combos = power_combos(PowerDesign::Level1, 3, 30, 7200);
    std::sort(combos.begin(), combos.end(),
              [](const PowerCombo& a, const PowerCombo& b) { return a.distance < b.distance; });
    const std::vector<PowerCombo> top(combos.end() - 5, combos.end());
    const auto rows = power_study(base, top, {10, 50}, 200, 1000);
    double p10 = 0.0, p50 = 0.0;
    for (const auto& row : rows) (row.r == 10 ? p10 : p50) += row.power / top.size();
    if (!(p50 > p10)) {
        std::ostringstream os;
        os << "largest-distance power " << p50 << " at r=50 not above " << p10 << " at r=10";
        detail = os.str();
        return false;
    }
    return true;
}

// ---------------------------------------------------------------- criterion 8

bool criterion8(std::string& detail) {
    // the location estimate is the exact minimum of the transformed first
    // failures
    for (const TransformSpec g : {TransformSpec{Transform::Identity},
                                  TransformSpec{Transform::Log}}) {
        ScenarioSpec spec;
        spec.n = 2;
        spec.s = 2;
        spec.baseline = BaselineSpec::location_scale(2, g, g.kind == Transform::Log ? 0.2 : 0.7);
        spec.alpha = ParamTable::constant(2, 2, 1.2);
        const Dataset d = sample_dataset(spec, 50, 808);
        const auto fit = mle_location_scale(d, g);
        double expect = std::numeric_limits<double>::infinity();
        for (const auto& obs : d.observations) expect = std::min(expect, g(obs.times[0]));
        if (fit.mu != expect) {
            detail = "location estimate is not the exact sample minimum";
            return false;
        }
    }

    // identity-transform scale family coincides bitwise with the
    // unit-exponential fit of the worked example
    {
        const Dataset d = testing::example_2of3();
        const auto exp_fit = mle_unrestricted(d, BaselineSpec::exponential(3, 1.0));
        const auto scale_fit = mle_scale_family(d, {Transform::Identity});
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 2; ++k)
                if (scale_fit.params.require(j, k) != exp_fit.params.require(j, k)) {
                    detail = "identity scale family deviates from the exponential fit";
                    return false;
                }
        if (!near(scale_fit.params.require(1, 1), 6.0 / 1.64, 1e-9)) {
            detail = "identity scale family misses the worked-example oracle";
            return false;
        }
    }

    // consistency loop for the power and log transforms at r = 10,000
    std::uint64_t seed = 909;
    for (const TransformSpec g :
         {TransformSpec{Transform::Power, 2.0}, TransformSpec{Transform::Log}}) {
        ScenarioSpec spec;
        spec.n = 3;
        spec.s = 2;
        spec.baseline = BaselineSpec::scale(3, g, 1.0);
        spec.alpha = ParamTable(3, 2);
        spec.alpha.set(1, 1, 0.8);
        spec.alpha.set(1, 2, 1.6);
        spec.alpha.set(2, 1, 1.2);
        spec.alpha.set(2, 2, 1.2);
        spec.alpha.set(3, 1, 1.5);
        spec.alpha.set(3, 2, 2.5);
        const Dataset d = sample_dataset(spec, 10000, seed++);
        const auto est = mle_scale_family(d, g);
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 2; ++k) {
                const double truth = spec.alpha.require(j, k);
                const double got = est.params.require(j, k);
                const double se = truth / std::sqrt(static_cast<double>(est.counts.count(j, k)));
                if (!near(got, truth, 3.0 * se)) {
                    std::ostringstream os;
                    os << g.name() << " transform: alpha(" << j << "," << k << ") = " << got
                       << " misses " << truth << " by more than 3 standard errors";
                    detail = os.str();
                    return false;
                }
            }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    bool full = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--full") == 0) full = true;

    std::string detail;
    auto run = [&](int idx, const std::string& name, auto&& fn) {
        detail.clear();
        bool ok = false;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("unexpected exception: ") + e.what();
        }
        report(idx, name, ok, detail);
    };

    run(1, "worked-example golden reproduction", criterion1);
    run(2, "order-restricted estimator correctness", criterion2);
    run(3, "isotonic regression oracle equivalence", criterion3);
    run(4, "Monte Carlo mean/sd reproduction",
        [&](std::string& d) { return criterion4(d, full); });
    run(5, "existence proportions", criterion5);
    run(6, "simulator distributional checks", criterion6);
    run(7, "test size and power", criterion7);
    run(8, "scale and location-scale families", criterion8);

    return failures == 0 ? 0 : 1;
}
