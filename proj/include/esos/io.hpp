#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "esos/data.hpp"
#include "esos/estimators.hpp"
#include "esos/inference.hpp"
#include "esos/simulator.hpp"

namespace esos::io {

inline constexpr int kSchemaVersion = 1;

// Long-format dataset CSV: optional `# n=<int>` comment, header
// `trial,level,time,component`, one row per failure event. Trials must be
// complete (levels 1..s each). Errors carry row-level diagnostics.
Dataset parse_dataset_csv(std::istream& in, int n_override = 0);
Dataset parse_dataset_csv_file(const std::string& path, int n_override = 0);
void write_dataset_csv(std::ostream& out, const Dataset& d);
void write_dataset_csv_file(const std::string& path, const Dataset& d);

// Wide layout (one row per measurement: `x1,...` / `c1,...`), as used for
// hand-entered tables; converted to the long format above.
Dataset parse_dataset_wide_csv(std::istream& in, int n_override = 0);

// Scenario / run configuration JSON.
struct RunConfig {
    ScenarioSpec scenario;
    int r = 0;
    bool baseline_rate_known = true;  // absent rate => scale/location-scale estimation target
    TransformSpec transform;          // baseline transform, for the estimation path
    Family family = Family::Exponential;
    nlohmann::json raw;               // command-specific blocks
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig parse_config_file(const std::string& path);

nlohmann::json estimate_to_json(const EstimateResult& unrestricted,
                                const EstimateResult& restricted);
nlohmann::json sequence_estimate_to_json(const EstimateResult& est);
nlohmann::json quantile_table_to_json(const QuantileTable& q);
QuantileTable quantile_table_from_json(const nlohmann::json& j);
nlohmann::json lrt_result_to_json(const LrtResult& res);

}  // namespace esos::io
