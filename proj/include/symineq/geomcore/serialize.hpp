#pragma once

#include <string>

#include <json.hpp>

#include "symineq/geomcore/ball.hpp"
#include "symineq/geomcore/gridset.hpp"
#include "symineq/geomcore/polytope.hpp"
#include "symineq/geomcore/region.hpp"

namespace symineq
{
using Json = nlohmann::json;

inline constexpr const char* kSchema = "symineq/v1";

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);  // list of rows
Matrix matrix_from_json(const Json& j);

// Occupancy bits packed LSB-first (cell 8k+j is bit j of byte k), then base64.
std::string encode_bits(const std::vector<uint64_t>& words, int64_t bits);
std::vector<uint64_t> decode_bits(const std::string& text, int64_t bits);

Json to_json(const Polytope& p);
Json to_json(const GridSet& g);
Json to_json(const Ellipsoid& e);
Json to_json(const Shell& s);
Json to_json(const Region& r);

Polytope polytope_from_json(const Json& j);
GridSet gridset_from_json(const Json& j);
Ellipsoid ellipsoid_from_json(const Json& j);
Shell shell_from_json(const Json& j);
// Dispatches on "type" (polytope, gridset, shell, ball); a bare vertex list is read as a polytope.
Region region_from_json(const Json& j);

Json read_json_file(const std::string& path);
// Writes through a temporary file and renames it into place.
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace symineq
