#include "symineq/matinq/constants_db.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "symineq/geomcore/error.hpp"

namespace symineq
{
std::string instance_hash(const Json& instance)
{
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : instance.dump())
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json to_json(const ConstantRecord& r)
{
    Json j{{"op", r.op}, {"instance_hash", r.instance_hash}, {"certificate", r.certificate}, {"seed", r.seed}};
    j["ratio"] = std::isfinite(r.ratio) ? Json(r.ratio) : Json(nullptr);
    return j;
}

ConstantRecord constant_record_from_json(const Json& j)
{
    try
    {
        ConstantRecord r;
        r.op = j.at("op").get<std::string>();
        r.instance_hash = j.at("instance_hash").get<std::string>();
        r.ratio = j.at("ratio").is_null() ? INFINITY : j.at("ratio").get<double>();
        r.certificate = j.at("certificate").get<bool>();
        r.seed = j.at("seed").get<uint64_t>();
        return r;
    }
    catch (const Json::exception& e)
    {
        throw FormatError(std::string("constants record: ") + e.what());
    }
}

ConstantsDb::ConstantsDb(std::string path) : path_(std::move(path)) {}

void ConstantsDb::append(const ConstantRecord& r)
{
    std::lock_guard<std::mutex> lock(mu_);
    std::ofstream out(path_, std::ios::app);
    if (!out)
        throw FormatError("cannot open constants database " + path_);
    out << to_json(r).dump() << '\n';
}

std::vector<ConstantRecord> ConstantsDb::load() const
{
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<ConstantRecord> out;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        Json j;
        try
        {
            j = Json::parse(line);
        }
        catch (const Json::exception& e)
        {
            throw FormatError("constants database " + path_ + ": " + e.what());
        }
        out.push_back(constant_record_from_json(j));
    }
    return out;
}

std::optional<double> ConstantsDb::max_ratio(const std::string& op) const
{
    std::optional<double> best;
    for (const ConstantRecord& r : load())
        if (r.op == op && std::isfinite(r.ratio) && (!best || r.ratio > *best))
            best = r.ratio;
    return best;
}

}  // namespace symineq
