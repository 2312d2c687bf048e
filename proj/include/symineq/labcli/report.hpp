#pragma once

#include <string>
#include <vector>

#include "symineq/geomcore/serialize.hpp"
#include "symineq/matinq/constants_db.hpp"

namespace symineq
{
enum class Outcome { Pass, Fail, LowerBoundOnly };
std::string outcome_name(Outcome o);

inline constexpr const char* kVersion = "symineq 1.0.0";

struct Report
{
    std::string scenario;
    std::string inputs_digest;
    Outcome outcome = Outcome::Fail;
    bool certificate = false;  // proven (exhaustive) bound rather than a search lower bound
    Json payload = Json::object();
    Json provenance = Json::object();
    double wall_time = 0;
    std::vector<ConstantRecord> records;  // realized constants for the database
};

// The payload-only form excludes the wall time so identical configs give identical bytes.
Json to_json(const Report& r, bool include_wall_time = true);
void write_report(const std::string& path, const Report& r);

}  // namespace symineq
