#include "symineq/rearrange/export.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "symineq/geomcore/error.hpp"
#include "symineq/geomcore/serialize.hpp"

namespace symineq
{
namespace
{
std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fixed(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}
}  // namespace

std::string trace_csv(const SymmetrisationTrace& tr)
{
    const int d = tr.target.dim();
    std::ostringstream os;
    os << "iter";
    for (int k = 0; k < d; ++k)
        os << ",u" << k;
    os << ",symdiff,hausdorff\n";
    for (const TraceStep& s : tr.steps)
    {
        os << s.iteration;
        for (int k = 0; k < d; ++k)
            os << ',' << (s.direction.dim() ? num(s.direction[k]) : "");
        os << ',' << num(s.symdiff) << ',' << num(s.hausdorff) << '\n';
    }
    return os.str();
}

nlohmann::json trace_to_json(const SymmetrisationTrace& tr, bool include_final)
{
    nlohmann::json steps = nlohmann::json::array();
    for (const TraceStep& s : tr.steps)
        steps.push_back({{"iter", s.iteration},
                         {"direction", s.direction.dim() ? vector_to_json(s.direction) : nlohmann::json::array()},
                         {"symdiff", s.symdiff},
                         {"hausdorff", s.hausdorff}});
    nlohmann::json j{{"scheme", scheme_name(tr.scheme)},
                     {"volume", tr.volume},
                     {"target_radius", tr.target.radius},
                     {"steps", steps},
                     {"converged", tr.converged},
                     {"flagged", tr.flagged},
                     {"note", tr.note}};
    if (include_final)
        j["final"] = std::visit([](const auto& b) { return to_json(b); }, tr.final_body);
    return j;
}

std::string snapshots_svg(const SymmetrisationTrace& tr, int size_px)
{
    if (tr.target.dim() != 2)
        throw PreconditionError("snapshots_svg: planar traces only");
    double ext = tr.target.radius;
    for (const auto& s : tr.snapshots)
    {
        Vector lo, hi;
        std::visit([&](const auto& b) { region_bounds(Region(b), lo, hi); }, s);
        for (int k = 0; k < 2; ++k)
            ext = std::max({ext, std::abs(lo[k]), std::abs(hi[k])});
    }
    ext *= 1.05;
    const double sc = size_px / (2 * ext);
    auto px = [&](double x) { return fixed((x + ext) * sc); };
    auto py = [&](double y) { return fixed((ext - y) * sc); };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_px << "\" height=\"" << size_px
       << "\" viewBox=\"0 0 " << size_px << ' ' << size_px << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const std::size_t n = tr.snapshots.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        int shade = n > 1 ? static_cast<int>(200 - 180 * i / (n - 1)) : 20;
        std::string color = "rgb(" + std::to_string(shade) + "," + std::to_string(shade) + ",255)";
        if (const auto* p = std::get_if<Polytope>(&tr.snapshots[i]))
        {
            os << "<polygon fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
            for (const Vector& v : p->hull().vertices)
                os << px(v[0]) << ',' << py(v[1]) << ' ';
            os << "\"/>\n";
        }
        else
        {
            // one rectangle per horizontal run of cells
            const GridSet& g = std::get<GridSet>(tr.snapshots[i]);
            const GridFrame& f = g.frame();
            os << "<g fill=\"" << color << "\" fill-opacity=\"0.35\">\n";
            int64_t run_start = -1, prev = -2;
            auto flush = [&](int64_t a, int64_t b) {
                int64_t ia[kMaxSetDim];
                f.unravel(a, ia);
                double x0 = f.origin[0] + ia[0] * f.cell;
                double y1 = f.origin[1] + (ia[1] + 1) * f.cell;
                double w = (b - a + 1) * f.cell;
                os << "<rect x=\"" << px(x0) << "\" y=\"" << py(y1) << "\" width=\"" << fixed(w * sc)
                   << "\" height=\"" << fixed(f.cell * sc) << "\"/>\n";
            };
            g.for_each_occupied([&](int64_t c) {
                if (c != prev + 1 || c % f.shape[0] == 0)
                {
                    if (run_start >= 0)
                        flush(run_start, prev);
                    run_start = c;
                }
                prev = c;
            });
            if (run_start >= 0)
                flush(run_start, prev);
            os << "</g>\n";
        }
    }
    os << "<circle cx=\"" << px(0) << "\" cy=\"" << py(0) << "\" r=\"" << fixed(tr.target.radius * sc)
       << "\" fill=\"none\" stroke=\"red\" stroke-dasharray=\"4 3\"/>\n";
    os << "</svg>\n";
    return os.str();
}

nlohmann::json to_json(const StepFunction& f)
{
    nlohmann::json pieces = nlohmann::json::array();
    for (const Piece& p : f.pieces())
        pieces.push_back({{"value", p.value}, {"region", to_json(p.region)}});
    return {{"schema", kSchema}, {"type", "step_function"}, {"dim", f.dim()}, {"pieces", pieces}};
}

StepFunction step_function_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("pieces"))
        throw FormatError("step function needs a 'pieces' list");
    std::vector<Piece> pieces;
    for (const auto& p : j["pieces"])
    {
        if (!p.contains("region") || !p.contains("value"))
            throw FormatError("each piece needs 'region' and 'value'");
        pieces.push_back(Piece{region_from_json(p["region"]), p["value"].get<double>()});
    }
    if (pieces.empty())
        throw FormatError("step function has no pieces");
    int d = j.contains("dim") ? j["dim"].get<int>() : region_dim(pieces[0].region);
    return StepFunction(d, std::move(pieces));
}

}  // namespace symineq
