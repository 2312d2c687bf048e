#pragma once

#include <string>
#include <vector>

#include "symineq/labcli/scenarios.hpp"

namespace symineq
{
struct SuiteRow
{
    std::string scenario;
    std::string source;
    std::string inputs_digest;
    Outcome outcome = Outcome::Fail;
    bool certificate = false;
    std::string error;  // set when the scenario threw
    Json constants = Json::object();
};

struct SuiteSummary
{
    std::vector<SuiteRow> rows;
    std::vector<Report> reports;  // in row order; empty for rows that threw
    int passed = 0, failed = 0, lower_bound_only = 0, errors = 0;
    bool all_pass() const { return passed == static_cast<int>(rows.size()); }
};

// Runs every config (in parallel); a scenario that throws becomes a failing row.
SuiteSummary run_suite(const std::vector<ExperimentConfig>& configs);
Json to_json(const SuiteSummary& s);
// scenario,config,quantity,value for every realized constant, in row order.
std::string constants_csv(const SuiteSummary& s);

}  // namespace symineq
