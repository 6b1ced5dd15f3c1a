#pragma once

#include <map>
#include <vector>

#include "esos/baseline.hpp"
#include "esos/data.hpp"
#include "esos/params.hpp"

namespace esos {

// Failure-count bookkeeping for a dataset: level counts m_{j,k}, per-trial
// survival indicators I_{j,k}, and counts per observed failure-sequence
// prefix.
struct CountTable {
    int n = 0, s = 0, r = 0;
    std::vector<int> m;                        // m_{j,k}, row-major (j-1)*s + (k-1)
    std::vector<std::vector<int>> fail_level;  // [trial][component-1]: level j failed at, 0 if alive
    std::map<SeqKey, int> sequence;            // m_{j|pi_{k-1}}

    int count(int j, int k) const { return m.at(static_cast<std::size_t>(j - 1) * s + (k - 1)); }
    // I_{j,k} for trial i (0-based trial index); I_{j,0} = 1 by convention.
    int indicator(int i, int j, int k) const {
        const int fl = fail_level.at(i).at(j - 1);
        return (fl == 0 || fl > k) ? 1 : 0;
    }
};

enum class EstimateMethod { Unrestricted, OrderRestricted, PooledSos, ScaleFamily, LocationScale };

struct EstimateResult {
    EstimateMethod method = EstimateMethod::Unrestricted;
    ParamTable params;  // MISSING entries have no value; sequence entries in params.sequence
    CountTable counts;
    std::vector<bool> component_complete;  // per component: all s level entries exist
    double mu = 0.0;                       // fitted location, LocationScale only
    bool has_mu = false;

    bool all_exist() const;
};

CountTable failure_counts(const Dataset& d);

// History-independent unrestricted MLEs: alpha_{j,k} = m_{j,k} / sum_i
// delta_{j,k,i} I_{j,k-1,i}; MISSING where m_{j,k} = 0.
EstimateResult mle_unrestricted(const Dataset& d, const BaselineSpec& b);

// History-dependent unrestricted MLEs keyed by observed prefixes.
EstimateResult mle_unrestricted_sequence(const Dataset& d, const BaselineSpec& b);

// Order-restricted MLEs: per component, reciprocal of the isotonic
// regression over reversed-level reciprocals of the unrestricted MLEs with
// weights m_{j,k}. A component gets estimates only if all its level counts
// are positive.
EstimateResult mle_order_restricted(const Dataset& d, const BaselineSpec& b);

// Level-pooled estimates under the identical-components hypothesis
// alpha_{j,k} = alpha_k.
struct PooledEstimates {
    std::vector<double> unrestricted;  // alpha_k, k = 1..s
    std::vector<double> restricted;    // non-decreasing projection
};
PooledEstimates mle_pooled_sos(const Dataset& d, const BaselineSpec& b);

// Scale family F*(t) = 1 - exp(-lambda g(t)) with unknown lambda: only the
// products lambda*alpha are estimable; the result targets those.
EstimateResult mle_scale_family(const Dataset& d, const TransformSpec& g);

// Location-scale family F*(t) = 1 - exp(-lambda(g(t) - mu)). Fits mu as the
// minimum of g over first failures, then the lambda*alpha products and their
// order-restricted projection.
struct LocationScaleFit {
    double mu = 0.0;
    BaselineSpec baseline;  // fitted baseline (lambda pinned to 1, loc = mu)
    EstimateResult unrestricted;
    EstimateResult restricted;
};
LocationScaleFit mle_location_scale(const Dataset& d, const TransformSpec& g);

}  // namespace esos
