#pragma once

#include "oscnet/scenario/scenario.hpp"

namespace oscnet::scenario::detail {

// Per-domain builders and runners, registered in scenario.cpp.
json microgrid_builtin(const std::string& name);
json tcl_builtin(const std::string& name);
json powergrid_builtin(const std::string& name);

bool is_microgrid_scenario(const std::string& name);
bool is_tcl_scenario(const std::string& name);
bool is_powergrid_scenario(const std::string& name);

ScenarioResult run_microgrid_scenario(const json& config);
ScenarioResult run_tcl_scenario(const json& config);
ScenarioResult run_powergrid_scenario(const json& config);

std::vector<std::pair<std::string, std::string>> microgrid_list();
std::vector<std::pair<std::string, std::string>> tcl_list();
std::vector<std::pair<std::string, std::string>> powergrid_list();

// Shared helpers.
double get_num(const json& j, const std::string& key, double fallback);
std::uint64_t get_seed(const json& j, std::uint64_t fallback = 1);

}  // namespace oscnet::scenario::detail
