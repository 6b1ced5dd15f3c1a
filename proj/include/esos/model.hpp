#pragma once

#include "esos/baseline.hpp"
#include "esos/data.hpp"
#include "esos/params.hpp"

namespace esos {

// Stage hazard under the conditional proportional-hazard-rate model:
// alpha * h_j*(t).
double cphr_hazard(double alpha, const BaselineSpec& b, int j, double t);

// Log of the joint density of (X^(1), C_1, ..., X^(s), C_s) at obs, using
// the level-indexed (history independent) parameters of p.
double esos_log_density(const Observation& obs, const ParamTable& p, const BaselineSpec& b);

// Same, with parameters keyed by the observed failure-sequence prefix.
double esos_log_density_sequence(const Observation& obs, const ParamTable& p,
                                 const BaselineSpec& b);

// Sum of per-observation log densities.
double log_likelihood(const Dataset& d, const ParamTable& p, const BaselineSpec& b);
double log_likelihood_sequence(const Dataset& d, const ParamTable& p, const BaselineSpec& b);

}  // namespace esos
