#include "symineq/labcli/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "symineq/geomcore/error.hpp"
#include "symineq/labcli/scenarios.hpp"

namespace symineq
{
double ExperimentConfig::tolerance(const std::string& name, double fallback) const
{
    auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
}

namespace
{
template <class T>
T positive(const Json& b, const char* key)
{
    const Json& v = b.at(key);
    if (!v.is_number())
        throw FormatError(std::string("config: budget '") + key + "' must be a number");
    if (!(v.get<double>() > 0))
        throw PreconditionError(std::string("config: budget '") + key + "' must be positive");
    if constexpr (std::is_integral_v<T>)
    {
        double d = v.get<double>();
        if (d != std::floor(d) || d > 9.0e15)
            throw FormatError(std::string("config: budget '") + key + "' must be an integer");
    }
    return v.get<T>();
}
}  // namespace

ExperimentConfig config_from_json(const Json& j)
{
    if (!j.is_object())
        throw FormatError("config: expected a JSON object");
    if (j.contains("schema") && j.at("schema") != kSchema)
        throw FormatError("config: unsupported schema " + j.at("schema").dump());
    for (const auto& [key, _] : j.items())
        if (key != "schema" && key != "scenario" && key != "seed" && key != "budgets" && key != "tolerances"
            && key != "params")
            throw FormatError("config: unknown key '" + key + "'");
    ExperimentConfig c;
    if (!j.contains("scenario") || !j.at("scenario").is_string())
        throw FormatError("config: 'scenario' must be a string");
    c.scenario = j.at("scenario").get<std::string>();
    find_scenario(c.scenario);
    if (!j.contains("seed"))
        throw PreconditionError("config: 'seed' is mandatory");
    const Json& seed = j.at("seed");
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<int64_t>() < 0))
        throw FormatError("config: 'seed' must be a nonnegative integer");
    c.seed = j.at("seed").get<uint64_t>();
    if (j.contains("budgets"))
    {
        const Json& b = j.at("budgets");
        if (!b.is_object())
            throw FormatError("config: 'budgets' must be an object");
        for (const auto& [key, _] : b.items())
        {
            if (key == "samples")
                c.budgets.samples = positive<uint64_t>(b, "samples");
            else if (key == "restarts")
                c.budgets.restarts = positive<int>(b, "restarts");
            else if (key == "iterations")
                c.budgets.iterations = positive<int>(b, "iterations");
            else if (key == "cell")
                c.budgets.cell = positive<double>(b, "cell");
            else if (key == "instances")
                c.budgets.instances = positive<int>(b, "instances");
            else
                throw FormatError("config: unknown budget '" + key + "'");
        }
    }
    if (j.contains("tolerances"))
    {
        const Json& t = j.at("tolerances");
        if (!t.is_object())
            throw FormatError("config: 'tolerances' must be an object");
        for (const auto& [key, v] : t.items())
        {
            if (!v.is_number() || !(v.get<double>() >= 0))
                throw FormatError("config: tolerance '" + key + "' must be a nonnegative number");
            c.tolerances[key] = v.get<double>();
        }
    }
    if (j.contains("params"))
    {
        if (!j.at("params").is_object())
            throw FormatError("config: 'params' must be an object");
        c.params = j.at("params");
    }
    return c;
}

Json to_json(const ExperimentConfig& c)
{
    Json j;
    j["schema"] = kSchema;
    j["scenario"] = c.scenario;
    j["seed"] = c.seed;
    Json b = Json::object();
    if (c.budgets.samples)
        b["samples"] = c.budgets.samples;
    if (c.budgets.restarts)
        b["restarts"] = c.budgets.restarts;
    if (c.budgets.iterations)
        b["iterations"] = c.budgets.iterations;
    if (c.budgets.cell > 0)
        b["cell"] = c.budgets.cell;
    if (c.budgets.instances)
        b["instances"] = c.budgets.instances;
    j["budgets"] = b;
    Json t = Json::object();
    for (const auto& [k, v] : c.tolerances)
        t[k] = v;
    j["tolerances"] = t;
    j["params"] = c.params;
    return j;
}

ExperimentConfig load_config(const std::string& path)
{
    ExperimentConfig c = config_from_json(read_json_file(path));
    c.source = std::filesystem::path(path).filename().string();
    return c;
}

std::vector<ExperimentConfig> load_config_dir(const std::string& dir)
{
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw PreconditionError("config directory not found: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    std::vector<ExperimentConfig> out;
    for (const auto& f : files)
        out.push_back(load_config(f.string()));
    return out;
}

}  // namespace symineq
