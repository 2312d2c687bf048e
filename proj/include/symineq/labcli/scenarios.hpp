#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symineq/labcli/config.hpp"
#include "symineq/labcli/report.hpp"

namespace symineq
{
struct ScenarioResult
{
    bool pass = false;
    bool budget_exhausted = false;  // turns a pass into lower-bound-only
    bool certificate = false;
    Json payload = Json::object();
    std::vector<ConstantRecord> records;
};

struct ScenarioInfo
{
    std::string id;
    std::string module;
    std::string summary;
    std::function<ScenarioResult(const ExperimentConfig&)> run;
};

const std::vector<ScenarioInfo>& scenario_registry();
std::vector<std::string> scenario_ids();
// Throws PreconditionError for unknown ids.
const ScenarioInfo& find_scenario(const std::string& id);

Report run_scenario(const ExperimentConfig& config);

// The default configuration shipped for each scenario.
ExperimentConfig default_config(const std::string& id);

}  // namespace symineq
