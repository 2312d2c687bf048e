#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "symineq/geomcore/serialize.hpp"

namespace symineq
{
struct ConstantRecord
{
    std::string op;
    std::string instance_hash;
    double ratio = 0;
    bool certificate = false;
    uint64_t seed = 0;
};

// FNV-1a (64 bit) of the compact JSON dump, as 16 hex digits.
std::string instance_hash(const Json& instance);

Json to_json(const ConstantRecord& r);
ConstantRecord constant_record_from_json(const Json& j);

// Append-only JSON-lines file; one writer at a time.
class ConstantsDb
{
  public:
    explicit ConstantsDb(std::string path);
    void append(const ConstantRecord& r);
    std::vector<ConstantRecord> load() const;
    // largest finite ratio recorded for op, if any
    std::optional<double> max_ratio(const std::string& op) const;
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    mutable std::mutex mu_;
};

}  // namespace symineq
