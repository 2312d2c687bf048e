#pragma once

#include <map>
#include <string>

#include "symineq/geomcore/serialize.hpp"

namespace symineq
{
// Zero means "scenario default"; values given in a config must be positive.
struct Budgets
{
    uint64_t samples = 0;
    int restarts = 0;
    int iterations = 0;
    double cell = 0;
    int instances = 0;
};

struct ExperimentConfig
{
    std::string scenario;
    uint64_t seed = 0;
    Budgets budgets;
    std::map<std::string, double> tolerances;
    Json params = Json::object();
    std::string source;  // file the config came from, if any

    uint64_t samples(uint64_t fallback) const { return budgets.samples ? budgets.samples : fallback; }
    int restarts(int fallback) const { return budgets.restarts ? budgets.restarts : fallback; }
    int iterations(int fallback) const { return budgets.iterations ? budgets.iterations : fallback; }
    double cell(double fallback) const { return budgets.cell > 0 ? budgets.cell : fallback; }
    int instances(int fallback) const { return budgets.instances ? budgets.instances : fallback; }
    double tolerance(const std::string& name, double fallback) const;
    template <class T>
    T param(const std::string& name, T fallback) const
    {
        return params.contains(name) ? params.at(name).get<T>() : fallback;
    }
};

// {"schema": "symineq/v1", "scenario": id, "seed": n, "budgets": {...},
//  "tolerances": {...}, "params": {...}}. Unknown scenario ids are rejected.
ExperimentConfig config_from_json(const Json& j);
Json to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);
// Every *.json directly inside dir, sorted by file name.
std::vector<ExperimentConfig> load_config_dir(const std::string& dir);

}  // namespace symineq
