#pragma once

#include <cstdint>
#include <vector>

#include "esos/inference.hpp"
#include "esos/simulator.hpp"

namespace esos {

// Monte Carlo summary of the unrestricted and order-restricted estimators.
// Statistics are computed only over replicates where the respective estimate
// exists; the existence proportion is reported alongside.
struct SummaryEntry {
    int component = 0;
    int level = 0;
    double mean_unrestricted = 0.0;
    double sd_unrestricted = 0.0;
    double prop_unrestricted = 0.0;
    double mean_restricted = 0.0;
    double sd_restricted = 0.0;
    double prop_restricted = 0.0;
};

struct SummaryTable {
    std::vector<SummaryEntry> entries;  // component-major, level-minor
    int reps = 0;
    int r = 0;
    double prop_all_exist = 0.0;  // replicates where every OR entry exists

    const SummaryEntry& entry(int component, int level) const;
};

SummaryTable mc_estimate_summary(const ScenarioSpec& spec, int r, int reps);

// Gaussian kernel density estimate with Silverman's rule-of-thumb bandwidth
// h = 1.06 sd m^{-1/5}. Default grid: 512 points on [min-3h, max+3h].
struct CurveData {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;
    int sample_count = 0;
};

CurveData kde_curve(const std::vector<double>& samples, std::vector<double> grid = {});

// Sum over levels of |mean(restricted alpha_{1,k}) - alpha_{1,k}| / alpha_{1,k}
// per grid point of the proportionality factor(s).
struct SweepRow {
    double p1 = 0.0;
    double p2 = 0.0;  // NaN in single-factor mode
    double bias_sum = 0.0;
};

std::vector<SweepRow> proportionality_sweep(const ScenarioSpec& base, int r,
                                            const std::vector<double>& p_values, int reps);
std::vector<SweepRow> proportionality_sweep_grid(const ScenarioSpec& base, int r,
                                                 const std::vector<double>& p1_values,
                                                 const std::vector<double>& p2_values, int reps);

// Proportion of existing component estimates per (ptilde, r) pair: the
// fraction of (replicate, component) pairs in which all of the component's
// level counts are positive.
struct ExistenceRow {
    double ptilde = 0.0;
    int r = 0;
    double proportion = 0.0;
};

std::vector<ExistenceRow> existence_study(const ScenarioSpec& base, double within_p,
                                          const std::vector<double>& ptilde_values,
                                          const std::vector<int>& r_values, int reps);

// Likelihood-ratio-test power against Euclidean distance to the
// identical-components hypothesis.
enum class PowerDesign { Level1, Level2 };

struct PowerCombo {
    ParamTable alpha;
    double distance = 0.0;
};

struct PowerRow {
    double distance = 0.0;
    double power = 0.0;
    int r = 0;
};

// Random combos per the study design: Level1 draws the level-1 parameters
// uniformly in [0.1, 2] and sets level 2 to their maximum; Level2 fixes
// level 1 at 0.5 and draws level 2 uniformly in [0.5, 4].
std::vector<PowerCombo> power_combos(PowerDesign design, int n, int count, std::uint64_t seed);
double distance_to_null(const ParamTable& alpha);

std::vector<PowerRow> power_study(const ScenarioSpec& base, const std::vector<PowerCombo>& combos,
                                  const std::vector<int>& r_values, int reps, int null_sims,
                                  double level = 0.05);

std::vector<double> running_mean(const std::vector<double>& xs, int window);

}  // namespace esos
