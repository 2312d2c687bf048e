#include "symineq/labcli/report.hpp"

#include "symineq/geomcore/error.hpp"

namespace symineq
{
std::string outcome_name(Outcome o)
{
    switch (o)
    {
        case Outcome::Pass:
            return "pass";
        case Outcome::Fail:
            return "fail";
        case Outcome::LowerBoundOnly:
            return "lower-bound-only";
    }
    return "fail";
}

Json to_json(const Report& r, bool include_wall_time)
{
    Json j;
    j["schema"] = kSchema;
    j["scenario"] = r.scenario;
    j["inputs_digest"] = r.inputs_digest;
    j["outcome"] = outcome_name(r.outcome);
    j["certificate"] = r.certificate;
    j["payload"] = r.payload;
    j["provenance"] = r.provenance;
    if (include_wall_time)
        j["wall_time"] = r.wall_time;
    return j;
}

void write_report(const std::string& path, const Report& r)
{
    write_text_atomic(path, to_json(r).dump(2) + "\n");
}

}  // namespace symineq
