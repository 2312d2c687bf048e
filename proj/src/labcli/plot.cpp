#include "symineq/labcli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "symineq/geomcore/error.hpp"

namespace symineq
{
PlotKind plot_kind_from_name(const std::string& s)
{
    if (s == "convergence")
        return PlotKind::Convergence;
    if (s == "body-2d")
        return PlotKind::Body2d;
    if (s == "ratio-sweep")
        return PlotKind::RatioSweep;
    throw PreconditionError("unknown plot kind '" + s + "' (convergence, body-2d, ratio-sweep)");
}

std::string plot_kind_name(PlotKind k)
{
    switch (k)
    {
        case PlotKind::Convergence:
            return "convergence";
        case PlotKind::Body2d:
            return "body-2d";
        case PlotKind::RatioSweep:
            return "ratio-sweep";
    }
    return "convergence";
}

namespace
{
constexpr double kW = 480, kH = 360, kMargin = 48;
const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v)
{
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", v);
    return b;
}

std::string label(double v)
{
    char b[32];
    std::snprintf(b, sizeof b, "%.4g", v);
    return b;
}

std::string escape(const std::string& s)
{
    std::string o;
    for (char ch : s)
    {
        if (ch == '<')
            o += "&lt;";
        else if (ch == '>')
            o += "&gt;";
        else if (ch == '&')
            o += "&amp;";
        else
            o += ch;
    }
    return o;
}

// Data-to-pixel map over [x0, x1] × [y0, y1]; equal_aspect keeps circles round.
struct Canvas
{
    double x0, x1, y0, y1;
    std::string body;

    Canvas(double xa, double xb, double ya, double yb, bool equal_aspect = false)
    {
        if (!(xb > xa))
            xb = xa + 1;
        if (!(yb > ya))
            yb = ya + 1;
        if (equal_aspect)
        {
            double sx = (xb - xa) / (kW - 2 * kMargin), sy = (yb - ya) / (kH - 2 * kMargin), s = std::max(sx, sy);
            double cx = (xa + xb) / 2, cy = (ya + yb) / 2;
            xa = cx - s * (kW - 2 * kMargin) / 2;
            xb = cx + s * (kW - 2 * kMargin) / 2;
            ya = cy - s * (kH - 2 * kMargin) / 2;
            yb = cy + s * (kH - 2 * kMargin) / 2;
        }
        x0 = xa, x1 = xb, y0 = ya, y1 = yb;
    }
    double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kW - 2 * kMargin); }
    double py(double y) const { return kH - kMargin - (y - y0) / (y1 - y0) * (kH - 2 * kMargin); }

    void polyline(const std::vector<std::pair<double, double>>& pts, const char* colour, bool closed = false,
                  bool dashed = false)
    {
        std::string d;
        for (const auto& [x, y] : pts)
            d += (d.empty() ? "" : " ") + num(px(x)) + "," + num(py(y));
        body += std::string("<") + (closed ? "polygon" : "polyline") + " points=\"" + d + "\" fill=\"none\" stroke=\""
                + colour + "\" stroke-width=\"1.5\"" + (dashed ? " stroke-dasharray=\"5,3\"" : "") + "/>\n";
    }
    void dot(double x, double y, const char* colour)
    {
        body += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"3\" fill=\"" + colour + "\"/>\n";
    }
    void text(double x, double y, const std::string& s, const char* anchor = "middle")
    {
        body += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\""
                + anchor + "\">" + escape(s) + "</text>\n";
    }
    void axes(const std::string& xl, const std::string& yl)
    {
        const double l = kMargin, r = kW - kMargin, t = kMargin, b = kH - kMargin;
        body += "<rect x=\"" + num(l) + "\" y=\"" + num(t) + "\" width=\"" + num(r - l) + "\" height=\"" + num(b - t)
                + "\" fill=\"none\" stroke=\"#444\"/>\n";
        for (int i = 0; i <= 4; ++i)
        {
            double fx = x0 + (x1 - x0) * i / 4, fy = y0 + (y1 - y0) * i / 4;
            text(px(fx), b + 14, label(fx));
            text(l - 4, py(fy) + 4, label(fy), "end");
        }
        text((l + r) / 2, kH - 8, xl);
        body += "<text x=\"12\" y=\"" + num((t + b) / 2) + "\" font-family=\"sans-serif\" font-size=\"11\" "
                "text-anchor=\"middle\" transform=\"rotate(-90 12 " + num((t + b) / 2) + ")\">" + escape(yl) + "</text>\n";
    }
    std::string svg(const std::string& title) const
    {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kW) + "\" height=\"" + num(kH)
               + "\" viewBox=\"0 0 " + num(kW) + " " + num(kH) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
               + "<text x=\"" + num(kW / 2) + "\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
               + escape(title) + "</text>\n" + body + "</svg>\n";
    }
};

const Json& payload_of(const Json& in)
{
    if (!in.is_object())
        throw FormatError("plot: input must be a JSON object");
    return in.contains("payload") && in.at("payload").is_object() ? in.at("payload") : in;
}

std::string convergence(const Json& in)
{
    const Json& p = payload_of(in);
    const Json* tr = p.contains("steps") ? &p : p.contains("trace") ? &p.at("trace") : nullptr;
    if (!tr || !tr->at("steps").is_array() || tr->at("steps").empty())
        throw FormatError("plot convergence: payload has no symmetrisation trace");
    double vol = tr->value("volume", 0.0);
    std::vector<std::pair<double, double>> pts;
    for (const Json& s : tr->at("steps"))
    {
        if (!s.contains("iter") || !s.contains("symdiff"))
            throw FormatError("plot convergence: trace steps need iter and symdiff");
        double y = s.at("symdiff").get<double>();
        pts.emplace_back(s.at("iter").get<double>(), vol > 0 ? y / vol : y);
    }
    double ymax = 0;
    for (const auto& q : pts)
        ymax = std::max(ymax, q.second);
    Canvas c(0, std::max(1.0, pts.back().first), 0, ymax > 0 ? ymax * 1.05 : 1);
    c.axes("iteration", vol > 0 ? "|E_m sym.diff. E*| / |E|" : "|E_m sym.diff. E*|");
    c.polyline(pts, kColours[0]);
    for (const auto& [x, y] : pts)
        c.dot(x, y, kColours[0]);
    return c.svg("Steiner rounding (" + tr->value("scheme", std::string("greedy")) + ")");
}

std::vector<std::pair<double, double>> ring_of(const Json& j)
{
    Polytope poly = polytope_from_json(j);
    if (poly.dim() != 2)
        throw FormatError("plot body-2d: bodies must be planar polytopes");
    std::vector<std::pair<double, double>> ring;
    for (const Vector& v : poly.hull().vertices)
        ring.emplace_back(v[0], v[1]);
    return ring;
}

std::string body2d(const Json& in)
{
    const Json& p = payload_of(in);
    std::vector<std::vector<std::pair<double, double>>> rings;
    try
    {
        if (p.contains("bodies") && p.at("bodies").is_array())
            for (const Json& b : p.at("bodies"))
                rings.push_back(ring_of(b));
        else if (p.contains("final"))
            rings.push_back(ring_of(p.at("final")));
        else if (p.contains("trace") && p.at("trace").contains("final"))
            rings.push_back(ring_of(p.at("trace").at("final")));
        else if (p.value("type", std::string()) == "polytope" || p.contains("vertices"))
            rings.push_back(ring_of(p));
    }
    catch (const nlohmann::json::exception& e)
    {
        throw FormatError(std::string("plot body-2d: ") + e.what());
    }
    if (rings.empty())
        throw FormatError("plot body-2d: payload has no planar polytopes");
    double lo[2] = {INFINITY, INFINITY}, hi[2] = {-INFINITY, -INFINITY};
    for (const auto& r : rings)
        for (const auto& [x, y] : r)
        {
            lo[0] = std::min(lo[0], x), hi[0] = std::max(hi[0], x);
            lo[1] = std::min(lo[1], y), hi[1] = std::max(hi[1], y);
        }
    const double pad = 0.05 * std::max(hi[0] - lo[0], hi[1] - lo[1]);
    Canvas c(lo[0] - pad, hi[0] + pad, lo[1] - pad, hi[1] + pad, true);
    c.axes("x1", "x2");
    for (std::size_t i = 0; i < rings.size(); ++i)
        c.polyline(rings[i], kColours[i % 6], true);
    return c.svg("planar bodies");
}

std::string ratio_sweep(const Json& in)
{
    const Json& p = payload_of(in);
    if (!p.contains("sweep") || !p.at("sweep").is_array() || p.at("sweep").empty())
        throw FormatError("plot ratio-sweep: payload has no sweep");
    std::vector<std::pair<double, double>> pts;
    for (const Json& s : p.at("sweep"))
    {
        if (!s.contains("x") || !s.contains("y") || !s.at("x").is_number() || !s.at("y").is_number())
            throw FormatError("plot ratio-sweep: sweep points need numeric x and y");
        pts.emplace_back(s.at("x").get<double>(), s.at("y").get<double>());
    }
    std::sort(pts.begin(), pts.end());
    double xmin = pts.front().first, xmax = pts.back().first, ymax = 0;
    for (const auto& q : pts)
        ymax = std::max(ymax, q.second);
    Canvas c(std::min(0.0, xmin), xmax * 1.05, 0, std::max(ymax, xmax) * 1.05);
    c.axes(p.value("x_label", std::string("x")), p.value("y_label", std::string("y")));
    // reference line y = x
    c.polyline({{0, 0}, {xmax * 1.05, xmax * 1.05}}, "#999999", false, true);
    c.polyline(pts, kColours[1]);
    for (const auto& [x, y] : pts)
        c.dot(x, y, kColours[1]);
    return c.svg("ratio sweep");
}
}  // namespace

std::string emit_plot(const Json& input, PlotKind kind)
{
    switch (kind)
    {
        case PlotKind::Convergence:
            return convergence(input);
        case PlotKind::Body2d:
            return body2d(input);
        case PlotKind::RatioSweep:
            return ratio_sweep(input);
    }
    throw PreconditionError("emit_plot: unknown kind");
}

}  // namespace symineq
