#include "symineq/rearrange/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symineq/geomcore/error.hpp"

namespace symineq
{
namespace
{
// Sample points of a region that lie in its interior (for the overlap witness test).
std::vector<Vector> probe_points(const Region& r)
{
    std::vector<Vector> out;
    if (const auto* p = std::get_if<Polytope>(&r))
    {
        const HullData& h = p->hull();
        if (h.affine_dim < p->dim())
            return out;
        out.push_back(h.interior);
        for (const Vector& v : h.vertices)
            out.push_back(v * 0.9 + h.interior * 0.1);
    }
    else if (const auto* g = std::get_if<GridSet>(&r))
        g->for_each_occupied([&](int64_t i) { out.push_back(g->frame().center(i)); });
    else
    {
        const Shell& s = std::get<Shell>(r);
        double mid = 0.5 * (s.inner + s.outer);
        for (int k = 0; k < s.dim(); ++k)
            for (double sg : {-1.0, 1.0})
                out.push_back(s.center + Vector::unit(s.dim(), k) * (sg * mid));
    }
    return out;
}

bool strictly_inside(const Region& r, const Vector& x)
{
    if (const auto* p = std::get_if<Polytope>(&r))
    {
        const HullData& h = p->hull();
        if (h.affine_dim < p->dim())
            return false;
        for (const Facet& f : h.facets)
            if (dot(f.normal, x) - f.offset > -1e-9 * h.scale)
                return false;
        return true;
    }
    if (const auto* g = std::get_if<GridSet>(&r))
        return g->contains(x);
    const Shell& s = std::get<Shell>(r);
    double d = distance(x, s.center);
    return d < s.outer * (1 - 1e-12) && d > s.inner * (1 + 1e-12);
}

bool overlaps(const Region& a, const Region& b)
{
    const auto* ga = std::get_if<GridSet>(&a);
    const auto* gb = std::get_if<GridSet>(&b);
    if (ga && gb && ga->frame().same_as(gb->frame()))
    {
        for (std::size_t w = 0; w < ga->words().size(); ++w)
            if (ga->words()[w] & gb->words()[w])
                return true;
        return false;
    }
    const auto* sa = std::get_if<Shell>(&a);
    const auto* sb = std::get_if<Shell>(&b);
    if (sa && sb && distance(sa->center, sb->center) == 0.0)
        return std::max(sa->inner, sb->inner) < std::min(sa->outer, sb->outer) * (1 - 1e-12);
    for (const Vector& x : probe_points(a))
        if (strictly_inside(b, x))
            return true;
    for (const Vector& x : probe_points(b))
        if (strictly_inside(a, x))
            return true;
    return false;
}
}  // namespace

StepFunction::StepFunction(int dim, std::vector<Piece> pieces) : dim_(dim), pieces_(std::move(pieces))
{
    require(dim >= 1 && dim <= kMaxSetDim, "StepFunction: dimension out of range");
    for (const Piece& p : pieces_)
    {
        require(region_dim(p.region) == dim, "StepFunction: piece dimension mismatch");
        require(std::isfinite(p.value) && p.value > 0, "StepFunction: piece values must be finite and positive");
        require(std::isfinite(region_volume(p.region)), "StepFunction: pieces must have finite measure");
    }
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        for (std::size_t j = i + 1; j < pieces_.size(); ++j)
            if (overlaps(pieces_[i].region, pieces_[j].region))
                throw PreconditionError("StepFunction: pieces " + std::to_string(i) + " and " + std::to_string(j)
                                        + " overlap");
}

StepFunction StepFunction::indicator(Region r, double value)
{
    int d = region_dim(r);
    return StepFunction(d, {Piece{std::move(r), value}});
}

double StepFunction::operator()(const Vector& x) const
{
    for (const Piece& p : pieces_)
        if (region_contains(p.region, x))
            return p.value;
    return 0.0;
}

double StepFunction::level_volume(double t) const
{
    double v = 0;
    for (const Piece& p : pieces_)
        if (p.value > t)
            v += region_volume(p.region);
    return v;
}

std::vector<double> StepFunction::levels() const
{
    std::vector<double> v;
    for (const Piece& p : pieces_)
        v.push_back(p.value);
    std::sort(v.begin(), v.end(), std::greater<>());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

double StepFunction::integral() const
{
    double s = 0;
    for (const Piece& p : pieces_)
        s += p.value * region_volume(p.region);
    return s;
}

double StepFunction::max_value() const
{
    double m = 0;
    for (const Piece& p : pieces_)
        m = std::max(m, p.value);
    return m;
}

StepFunction StepFunction::scaled(double c) const
{
    require(c > 0, "StepFunction::scaled: factor must be positive");
    std::vector<Piece> out = pieces_;
    for (Piece& p : out)
        p.value *= c;
    return StepFunction(dim_, std::move(out));
}

void StepFunction::bounds(Vector& lo, Vector& hi) const
{
    lo = Vector(dim_);
    hi = Vector(dim_);
    bool first = true;
    for (const Piece& p : pieces_)
    {
        Vector a, b;
        region_bounds(p.region, a, b);
        for (int k = 0; k < dim_; ++k)
        {
            lo[k] = first ? a[k] : std::min(lo[k], a[k]);
            hi[k] = first ? b[k] : std::max(hi[k], b[k]);
        }
        first = false;
    }
}

StepFunction rearrange_function(const StepFunction& f)
{
    const int n = f.dim();
    const double vn = unit_ball_volume(n);
    std::vector<Piece> out;
    double inner = 0;
    for (double level : f.levels())
    {
        double vol = 0;
        for (const Piece& p : f.pieces())
            if (p.value >= level)
                vol += region_volume(p.region);
        double outer = std::pow(vol / vn, 1.0 / n);
        if (outer > inner)
            out.push_back(Piece{Shell{Vector(n), inner, outer}, level});
        inner = std::max(inner, outer);
    }
    return StepFunction(n, std::move(out));
}

bool is_radial_nonincreasing(const StepFunction& f)
{
    std::vector<const Shell*> shells;
    for (const Piece& p : f.pieces())
    {
        const auto* s = std::get_if<Shell>(&p.region);
        if (!s || norm(s->center) != 0.0)
            return false;
        shells.push_back(s);
    }
    for (std::size_t i = 0; i < shells.size(); ++i)
        for (std::size_t j = 0; j < shells.size(); ++j)
            if (shells[i]->outer <= shells[j]->inner && f.pieces()[i].value < f.pieces()[j].value)
                return false;
    return true;
}

}  // namespace symineq
