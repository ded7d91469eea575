#include "oscnet/scenario/scenario.hpp"

#include <filesystem>
#include <fstream>

#include "scenario_detail.hpp"

namespace oscnet::scenario {

namespace detail {

double get_num(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw std::invalid_argument("config field " + key + ": not a number");
    return j[key].get<double>();
}

std::uint64_t get_seed(const json& j, std::uint64_t fallback) {
    if (!j.contains("seed")) return fallback;
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
        throw std::invalid_argument("config field seed: not an integer");
    return j["seed"].get<std::uint64_t>();
}

}  // namespace detail

std::vector<std::pair<std::string, std::string>> list_scenarios() {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto&& group : {detail::microgrid_list(), detail::tcl_list(), detail::powergrid_list()})
        out.insert(out.end(), group.begin(), group.end());
    return out;
}

json builtin_config(const std::string& name) {
    if (detail::is_microgrid_scenario(name)) return detail::microgrid_builtin(name);
    if (detail::is_tcl_scenario(name)) return detail::tcl_builtin(name);
    if (detail::is_powergrid_scenario(name)) return detail::powergrid_builtin(name);
    throw std::invalid_argument("unknown scenario: " + name);
}

ScenarioResult run_scenario(const json& config) {
    if (!config.contains("scenario") || !config["scenario"].is_string())
        throw std::invalid_argument("config field scenario: missing or not a string");
    const std::string name = config["scenario"].get<std::string>();
    // Merge the user config over the built-in resolved config so manifests
    // and partial override files both run.
    json resolved = builtin_config(name);
    for (auto it = config.begin(); it != config.end(); ++it) {
        if (!resolved.contains(it.key()) && it.key() != "scenario")
            throw std::invalid_argument("config field " + it.key() + ": unknown for scenario " +
                                        name);
        resolved[it.key()] = it.value();
    }
    ScenarioResult result;
    if (detail::is_microgrid_scenario(name)) result = detail::run_microgrid_scenario(resolved);
    else if (detail::is_tcl_scenario(name)) result = detail::run_tcl_scenario(resolved);
    else result = detail::run_powergrid_scenario(resolved);
    result.name = name;
    result.config = resolved;
    result.summary["schema_version"] = kSchemaVersion;
    result.summary["scenario"] = name;
    result.summary["seed"] = detail::get_seed(resolved);
    return result;
}

ScenarioResult run_builtin(const std::string& name, std::optional<std::uint64_t> seed) {
    json config = builtin_config(name);
    if (seed) config["seed"] = *seed;
    return run_scenario(config);
}

void write_artifacts(const ScenarioResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(out_dir) / result.name;
    fs::create_directories(dir);
    for (const auto& [stem, ts] : result.series) ts.write_csv_file((dir / (stem + ".csv")).string());
    for (const auto& [stem, text] : result.tables) {
        std::ofstream os(dir / (stem + ".csv"));
        os << text;
    }
    {
        std::ofstream os(dir / "summary.json");
        os << result.summary.dump(2) << '\n';
    }
    {
        json manifest;
        manifest["tool_version"] = kToolVersion;
        manifest["schema_version"] = kSchemaVersion;
        manifest["scenario"] = result.name;
        manifest["seed"] = result.summary["seed"];
        manifest["config"] = result.config;
        std::ofstream os(dir / "manifest.json");
        os << manifest.dump(2) << '\n';
    }
}

json load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    json j = json::parse(is);
    if (j.contains("config") && j.contains("tool_version")) return j["config"];  // manifest
    return j;
}

}  // namespace oscnet::scenario
