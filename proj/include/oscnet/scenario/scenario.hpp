#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "oscnet/simcore/time_series.hpp"

namespace oscnet::scenario {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "oscnet 1.0.0";

struct ScenarioResult {
    std::string name;
    json config;   // fully resolved configuration (echoed into the manifest)
    json summary;  // metrics, schema_version, seed
    std::map<std::string, TimeSeries> series;   // csv artifacts by stem
    std::map<std::string, std::string> tables;  // extra csv artifacts (pre-rendered)
};

/// Built-in scenario catalog: name -> one-line description.
std::vector<std::pair<std::string, std::string>> list_scenarios();

/// Fully resolved config of a built-in scenario (throws on unknown names).
json builtin_config(const std::string& name);

/// Execute a scenario from its resolved config. The config must carry
/// "scenario" (built-in name) plus optional overrides; unknown fields are
/// rejected with their paths.
ScenarioResult run_scenario(const json& config);

/// Convenience: run a built-in by name with optional seed override.
ScenarioResult run_builtin(const std::string& name, std::optional<std::uint64_t> seed = {});

/// Write trajectory CSVs, summary.json and manifest.json under
/// out_dir/<scenario-name>/. The manifest alone re-runs the scenario.
void write_artifacts(const ScenarioResult& result, const std::string& out_dir);

/// Load a config or manifest file (a manifest embeds the config under
/// "config").
json load_config_file(const std::string& path);

}  // namespace oscnet::scenario
