#include "symineq/labcli/suite.hpp"

#include <cstdio>

#include "symineq/geomcore/error.hpp"
#include "symineq/geomcore/parallel.hpp"

namespace symineq
{
SuiteSummary run_suite(const std::vector<ExperimentConfig>& configs)
{
    require(!configs.empty(), "run_suite: empty config list");
    std::vector<SuiteRow> rows(configs.size());
    std::vector<Report> reports(configs.size());
    std::vector<char> ok(configs.size(), 0);
    parallel_for(configs.size(), [&](std::size_t i) {
        const ExperimentConfig& c = configs[i];
        SuiteRow& row = rows[i];
        row.scenario = c.scenario;
        row.source = c.source;
        row.inputs_digest = instance_hash(to_json(c));
        try
        {
            Report r = run_scenario(c);
            row.outcome = r.outcome;
            row.certificate = r.certificate;
            if (r.payload.contains("constants"))
                row.constants = r.payload.at("constants");
            reports[i] = std::move(r);
            ok[i] = 1;
        }
        catch (const std::exception& e)
        {
            row.outcome = Outcome::Fail;
            row.error = e.what();
        }
    });
    SuiteSummary s;
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        switch (rows[i].outcome)
        {
            case Outcome::Pass:
                ++s.passed;
                break;
            case Outcome::LowerBoundOnly:
                ++s.lower_bound_only;
                break;
            case Outcome::Fail:
                ++s.failed;
                break;
        }
        s.errors += !rows[i].error.empty();
        if (ok[i])
            s.reports.push_back(std::move(reports[i]));
        else
            s.reports.emplace_back();
    }
    s.rows = std::move(rows);
    return s;
}

Json to_json(const SuiteSummary& s)
{
    Json rows = Json::array();
    for (const SuiteRow& r : s.rows)
        rows.push_back({{"scenario", r.scenario},
                        {"config", r.source},
                        {"inputs_digest", r.inputs_digest},
                        {"outcome", outcome_name(r.outcome)},
                        {"certificate", r.certificate},
                        {"error", r.error.empty() ? Json() : Json(r.error)},
                        {"constants", r.constants}});
    return {{"schema", kSchema},
            {"version", kVersion},
            {"rows", rows},
            {"counts",
             {{"total", s.rows.size()},
              {"pass", s.passed},
              {"fail", s.failed},
              {"lower_bound_only", s.lower_bound_only},
              {"errors", s.errors}}},
            {"all_pass", s.all_pass()}};
}

std::string constants_csv(const SuiteSummary& s)
{
    std::string out = "scenario,config,quantity,value\n";
    char buf[64];
    for (const SuiteRow& r : s.rows)
        for (const auto& [key, v] : r.constants.items())
        {
            if (v.is_number())
                std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
            else
                std::snprintf(buf, sizeof buf, "%s", "nan");
            out += r.scenario + "," + r.source + "," + key + "," + buf + "\n";
        }
    return out;
}

}  // namespace symineq
