#include "symineq/geomcore/serialize.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "symineq/geomcore/error.hpp"

namespace symineq
{
namespace
{
constexpr char kB64[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

void check_schema(const Json& j)
{
    if (j.contains("schema") && j["schema"] != kSchema)
        throw FormatError("unsupported schema " + j["schema"].dump());
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string("missing field '") + key + "'");
    return j[key];
}
}  // namespace

Json vector_to_json(const Vector& v)
{
    Json a = Json::array();
    for (int i = 0; i < v.dim(); ++i)
        a.push_back(v[i]);
    return a;
}

Vector vector_from_json(const Json& j)
{
    if (!j.is_array() || j.empty() || j.size() > static_cast<std::size_t>(kMaxVectorDim))
        throw FormatError("vector must be an array of 1..16 numbers");
    Vector v(static_cast<int>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
    {
        if (!j[i].is_number())
            throw FormatError("vector entries must be numbers");
        v[static_cast<int>(i)] = j[i].get<double>();
    }
    if (!v.is_finite())
        throw FormatError("vector entries must be finite");
    return v;
}

Json matrix_to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
    {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

Matrix matrix_from_json(const Json& j)
{
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw FormatError("matrix must be a nonempty list of rows");
    const std::size_t cols = j[0].size();
    Matrix m(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r)
    {
        if (!j[r].is_array() || j[r].size() != cols)
            throw FormatError("matrix rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = j[r][c].get<double>();
    }
    return m;
}

std::string encode_bits(const std::vector<uint64_t>& words, int64_t bits)
{
    const std::size_t nbytes = static_cast<std::size_t>((bits + 7) / 8);
    std::string bytes(nbytes, '\0');
    for (std::size_t k = 0; k < nbytes; ++k)
        bytes[k] = static_cast<char>((words[k / 8] >> (8 * (k % 8))) & 0xff);
    std::string out;
    out.reserve((nbytes + 2) / 3 * 4);
    for (std::size_t i = 0; i < nbytes; i += 3)
    {
        uint32_t v = static_cast<uint8_t>(bytes[i]) << 16;
        if (i + 1 < nbytes)
            v |= static_cast<uint8_t>(bytes[i + 1]) << 8;
        if (i + 2 < nbytes)
            v |= static_cast<uint8_t>(bytes[i + 2]);
        out.push_back(kB64[(v >> 18) & 63]);
        out.push_back(kB64[(v >> 12) & 63]);
        out.push_back(i + 1 < nbytes ? kB64[(v >> 6) & 63] : '=');
        out.push_back(i + 2 < nbytes ? kB64[v & 63] : '=');
    }
    return out;
}

std::vector<uint64_t> decode_bits(const std::string& text, int64_t bits)
{
    int rev[256];
    std::fill(std::begin(rev), std::end(rev), -1);
    for (int i = 0; i < 64; ++i)
        rev[static_cast<unsigned char>(kB64[i])] = i;
    std::vector<uint8_t> bytes;
    uint32_t acc = 0;
    int have = 0;
    for (char ch : text)
    {
        if (ch == '=' || ch == '\n' || ch == ' ')
            continue;
        int v = rev[static_cast<unsigned char>(ch)];
        if (v < 0)
            throw FormatError("occupancy is not valid base64");
        acc = (acc << 6) | static_cast<uint32_t>(v);
        have += 6;
        if (have >= 8)
        {
            have -= 8;
            bytes.push_back(static_cast<uint8_t>((acc >> have) & 0xff));
        }
    }
    const std::size_t nbytes = static_cast<std::size_t>((bits + 7) / 8);
    if (bytes.size() != nbytes)
        throw FormatError("occupancy length does not match grid shape");
    std::vector<uint64_t> words(static_cast<std::size_t>((bits + 63) / 64), 0);
    for (std::size_t k = 0; k < nbytes; ++k)
        words[k / 8] |= static_cast<uint64_t>(bytes[k]) << (8 * (k % 8));
    return words;
}

Json to_json(const Polytope& p)
{
    Json v = Json::array();
    for (const Vector& x : p.vertices())
        v.push_back(vector_to_json(x));
    return Json{{"schema", kSchema}, {"type", "polytope"}, {"dim", p.dim()}, {"vertices", v}};
}

Json to_json(const GridSet& g)
{
    const GridFrame& f = g.frame();
    Json shape = Json::array();
    for (int k = 0; k < f.dim; ++k)
        shape.push_back(f.shape[k]);
    return Json{{"schema", kSchema}, {"type", "gridset"}, {"dim", f.dim}, {"origin", vector_to_json(f.origin)},
                {"cell", f.cell}, {"shape", shape}, {"occupancy", encode_bits(g.words(), f.cell_count())}};
}

Json to_json(const Ellipsoid& e)
{
    return Json{{"schema", kSchema},
                {"type", "ellipsoid"},
                {"dim", e.dim()},
                {"center", vector_to_json(e.center())},
                {"axes", matrix_to_json(e.axes())}};
}

Json to_json(const Shell& s)
{
    return Json{{"schema", kSchema}, {"type", "shell"},   {"dim", s.dim()},
                {"center", vector_to_json(s.center)}, {"inner", s.inner}, {"outer", s.outer}};
}

Json to_json(const Region& r)
{
    return std::visit([](const auto& x) { return to_json(x); }, r);
}

Polytope polytope_from_json(const Json& j)
{
    const Json& pts = j.is_array() ? j : field(j, "vertices");
    if (j.is_object())
        check_schema(j);
    if (!pts.is_array() || pts.empty())
        throw FormatError("polytope needs at least one vertex");
    std::vector<Vector> v;
    for (const Json& x : pts)
        v.push_back(vector_from_json(x));
    const int d = v[0].dim();
    for (const Vector& x : v)
        if (x.dim() != d)
            throw FormatError("polytope vertices have mixed dimensions");
    if (j.is_object() && j.contains("dim") && j["dim"].get<int>() != d)
        throw FormatError("polytope dim does not match its vertices");
    if (d > kMaxSetDim)
        return Polytope::from_extreme_points(std::move(v));
    return Polytope::hull_of(v);
}

GridSet gridset_from_json(const Json& j)
{
    check_schema(j);
    Vector origin = vector_from_json(field(j, "origin"));
    double cell = field(j, "cell").get<double>();
    std::vector<int64_t> shape = field(j, "shape").get<std::vector<int64_t>>();
    if (static_cast<int>(shape.size()) != origin.dim())
        throw FormatError("grid shape length does not match origin");
    GridFrame frame(origin, cell, shape);
    return GridSet(frame, decode_bits(field(j, "occupancy").get<std::string>(), frame.cell_count()));
}

Ellipsoid ellipsoid_from_json(const Json& j)
{
    check_schema(j);
    Vector c = vector_from_json(field(j, "center"));
    Matrix a = matrix_from_json(field(j, "axes"));
    if (a.rows() != c.dim() || a.cols() != c.dim())
        throw FormatError("ellipsoid axes must be dim x dim");
    return Ellipsoid(c, a);
}

Shell shell_from_json(const Json& j)
{
    check_schema(j);
    Shell s;
    s.center = vector_from_json(field(j, "center"));
    if (j.contains("radius"))
        s.outer = j["radius"].get<double>();
    else
    {
        s.inner = j.value("inner", 0.0);
        s.outer = field(j, "outer").get<double>();
    }
    if (!(s.inner >= 0 && s.outer >= s.inner))
        throw FormatError("shell radii must satisfy 0 <= inner <= outer");
    return s;
}

Region region_from_json(const Json& j)
{
    if (j.is_array())
        return polytope_from_json(j);
    std::string type = j.value("type", std::string(j.contains("occupancy") ? "gridset" : "polytope"));
    if (type == "polytope")
        return polytope_from_json(j);
    if (type == "gridset")
        return gridset_from_json(j);
    if (type == "shell" || type == "ball")
        return shell_from_json(j);
    throw FormatError("unknown region type '" + type + "'");
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    try
    {
        return Json::parse(in);
    }
    catch (const Json::parse_error& e)
    {
        throw FormatError(path + ": " + e.what());
    }
}

void write_text_atomic(const std::string& path, const std::string& text)
{
    std::filesystem::path target(path);
    if (target.has_parent_path())
        std::filesystem::create_directories(target.parent_path());
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw FormatError("cannot write " + tmp.string());
        out << text;
        if (!out)
            throw FormatError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

}  // namespace symineq
