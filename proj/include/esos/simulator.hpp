#pragma once

#include <cstdint>
#include <random>

#include "esos/baseline.hpp"
#include "esos/data.hpp"
#include "esos/params.hpp"
#include "esos/rng.hpp"

namespace esos {

// Everything needed to draw systems under the CPHR model. `alpha` must be
// fully populated; when `alpha_seq` is non-empty the draw is keyed by the
// observed failure-sequence prefix instead.
struct ScenarioSpec {
    int n = 0;
    int s = 0;
    BaselineSpec baseline;
    ParamTable alpha;
    std::map<SeqKey, double> alpha_seq;
    std::uint64_t seed = 0;

    bool sequence_keyed() const { return !alpha_seq.empty(); }
    void validate() const;
};

// Inverse-CDF draw of a failure time conditional on survival to t_prev:
// solves F̄*(x) = F̄*(t_prev) u^{1/alpha}. Always > t_prev for u < 1.
double sample_conditional_failure(const BaselineSpec& b, int j, double alpha, double t_prev,
                                  double u);

Observation sample_system(const ScenarioSpec& spec, std::mt19937_64& rng);

// r independent systems, one substream each, derived from master_seed so the
// result is independent of execution order.
Dataset sample_dataset(const ScenarioSpec& spec, int r, std::uint64_t master_seed);

// Parameter-grid generators used throughout the simulation studies.
//
// Within-component factor p: alpha_{j,1} = a1, alpha_{j,k} = p * alpha_{j,k-1},
// identical across components.
ParamTable alpha_within_factor(int n, int s, double p, double a1 = 1.0);
// Level factors p1, p2 (s = 3): alpha_{j,.} = (a1, p1*a1, p1*p2*a1).
ParamTable alpha_level_factors(int n, double p1, double p2, double a1 = 1.0);
// Between-component factor ptilde on top of within-component factor p:
// alpha_{j,1} = ptilde^{j-1}, alpha_{j,k} = p * alpha_{j,k-1}.
ParamTable alpha_between_factor(int n, int s, double p, double ptilde);

}  // namespace esos
