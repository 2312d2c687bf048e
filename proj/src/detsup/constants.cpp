#include "symineq/detsup/constants.hpp"

#include <cmath>

#include "symineq/geomcore/discretize.hpp"
#include "symineq/geomcore/error.hpp"
#include "symineq/geomcore/linalg.hpp"
#include "symineq/rearrange/steiner.hpp"

namespace symineq
{
SharpConstants sharp_constants(int n)
{
    if (n < 1 || n > 4)
        throw PreconditionError("sharp_constants: dimension must be in 1..4");
    SharpConstants c;
    c.n = n;
    c.A = unit_ball_volume(n);
    c.B = c.A * std::pow(static_cast<double>(n), 0.5 * n) / std::pow(n + 1.0, 0.5 * (n + 1));
    return c;
}

namespace
{
int default_ball_count(int n, const SupOptions& opt)
{
    switch (n)
    {
        case 1:
            return 2;
        case 2:
            return opt.ball_vertices_2d;
        case 3:
            return opt.ball_vertices_3d;
        default:
            return opt.ball_vertices_4d;
    }
}
}  // namespace

ConstantsCheck verify_sharp_constants(int n, double tol, const SupOptions& opt)
{
    ConstantsCheck c;
    c.closed = sharp_constants(n);
    c.ball_vertices = default_ball_count(n, opt);
    // the unit ball itself: candidates come from its inscribed polytope, then ascent
    // continues over the sphere
    SupOptions o = opt;
    o.ball_vertices_2d = o.ball_vertices_3d = o.ball_vertices_4d = c.ball_vertices;
    const Region ball = Shell{Vector(n), 0.0, 1.0};
    const double vol = unit_ball_volume(n);
    c.origin = sup_det_origin(ball, o);
    c.simplex = sup_det_simplex(ball, o);
    Polytope poly = discretized_ball(n, 1.0, c.ball_vertices);
    c.polytope.n = n;
    c.polytope.A = poly.volume() / sup_det_origin(Region(poly), o).value;
    c.polytope.B = poly.volume() / sup_det_simplex(Region(poly), o).value;
    c.numeric.n = n;
    c.numeric.A = vol / c.origin.value;
    c.numeric.B = vol / c.simplex.value;
    c.rel_err_A = std::abs(c.numeric.A - c.closed.A) / c.closed.A;
    c.rel_err_B = std::abs(c.numeric.B - c.closed.B) / c.closed.B;
    c.relation_holds = c.closed.B <= c.closed.A && c.closed.A <= (n + 1) * c.closed.B;
    c.pass = c.relation_holds && c.rel_err_A <= tol && c.rel_err_B <= tol;
    return c;
}

Json to_json(const SharpConstants& c)
{
    return Json{{"n", c.n}, {"A", c.A}, {"B", c.B}};
}

Json to_json(const ConstantsCheck& c)
{
    return Json{{"closed", to_json(c.closed)},
                {"numeric", to_json(c.numeric)},
                {"inscribed_polytope", to_json(c.polytope)},
                {"ball_vertices", c.ball_vertices},
                {"rel_err_A", c.rel_err_A},
                {"rel_err_B", c.rel_err_B},
                {"origin_sup", to_json(c.origin)},
                {"simplex_sup", to_json(c.simplex)},
                {"relation_holds", c.relation_holds},
                {"pass", c.pass}};
}

namespace
{
// Extreme points of a grid set viewed as a union of closed cells.
std::vector<Vector> grid_corner_hull(const GridSet& g)
{
    const GridFrame& f = g.frame();
    const int d = f.dim;
    std::vector<Vector> pts;
    int64_t line = -1, last = -1;
    auto push_cell = [&](int64_t i) {
        Vector c = f.center(i);
        for (int mask = 0; mask < (1 << d); ++mask)
        {
            Vector q = c;
            for (int k = 0; k < d; ++k)
                q[k] += ((mask >> k & 1) ? 0.5 : -0.5) * f.cell;
            pts.push_back(q);
        }
    };
    g.for_each_occupied([&](int64_t i) {
        int64_t l = i / f.shape[0];
        if (l != line)
        {
            if (last >= 0)
                push_cell(last);
            push_cell(i);
            line = l;
        }
        last = i;
    });
    if (last < 0)
        throw DegenerateError("empty grid set");
    push_cell(last);
    return Polytope::hull_of(pts).vertices();
}

double region_diameter(const Region& e)
{
    if (const auto* p = std::get_if<Polytope>(&e))
        return p->diameter();
    if (const auto* s = std::get_if<Shell>(&e))
        return 2 * s->outer;
    auto v = grid_corner_hull(std::get<GridSet>(e));
    double best = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            best = std::max(best, distance(v[i], v[j]));
    return best;
}

IsoReport iso_report(double volume, double bound)
{
    IsoReport r;
    r.volume = volume;
    r.bound = bound;
    r.ratio = bound > 0 ? volume / bound : 0;
    r.pass = volume <= bound * (1 + 1e-12);
    return r;
}
}  // namespace

IsoReport iso_radius_check(const Region& e)
{
    const int n = region_dim(e);
    double r = region_radius(e, Vector(n));
    return iso_report(region_volume(e), unit_ball_volume(n) * std::pow(r, n));
}

IsoReport iso_diameter_check(const Region& e)
{
    const int n = region_dim(e);
    double d = region_diameter(e);
    return iso_report(region_volume(e), unit_ball_volume(n) * std::pow(d / 2, n));
}

RelationReport relation_check(const Polytope& e, const SupOptions& opt)
{
    const int n = e.dim();
    require(e.contains(Vector(n), 1e-9), "relation_check: the set must contain the origin");
    RelationReport r;
    r.origin = sup_det_origin(Region(e), opt);
    r.simplex = sup_det_simplex(Region(e), opt);
    if (r.origin.value > 0)
    {
        r.lower_ratio = r.simplex.value / r.origin.value;
        r.upper_ratio = r.simplex.value / ((n + 1) * r.origin.value);
    }
    const double tol = 1e-12;
    r.pass = r.origin.value <= r.simplex.value * (1 + tol) && r.simplex.value <= (n + 1) * r.origin.value * (1 + tol);
    return r;
}

SimplexBoundReport simplex_bound_check(const Polytope& e, const SupOptions& opt)
{
    const int n = e.dim();
    require(n >= 1 && n <= 3, "simplex_bound_check: dimension must be at most 3");
    if (!(e.volume() > 0))
        throw DegenerateError("simplex_bound_check: degenerate set");
    SimplexBoundReport r;
    DetSupResult s = sup_det_simplex(Region(e), opt);
    r.volume = e.volume();
    r.simplex_volume = s.value / factorial(n);
    r.simplex = s.argmax;
    r.certificate = s.certificate;
    r.ratio = r.volume / r.simplex_volume;
    r.bound = std::pow(static_cast<double>(n), n);
    Vector c(n);
    for (const Vector& v : s.argmax)
        c += v;
    c *= 1.0 / (n + 1);
    std::vector<Vector> big;
    for (const Vector& v : s.argmax)
        big.push_back(c - (v - c) * static_cast<double>(n));
    Polytope outer = Polytope::hull_of(big);
    r.contained = true;
    for (const Vector& v : e.vertices())
        r.contained = r.contained && outer.contains(v, 1e-9);
    r.pass = r.contained && r.volume <= r.bound * r.simplex_volume * (1 + 1e-12);
    return r;
}

MacbeathReport macbeath_check(const Polytope& e, int m, const SupOptions& opt)
{
    const int n = e.dim();
    if (m != n + 1)
        throw PreconditionError("macbeath_check: only m = n+1 is supported");
    if (!(e.volume() > 0))
        throw DegenerateError("macbeath_check: degenerate set");
    MacbeathReport r;
    r.original = sup_det_simplex(Region(e), opt);
    const double radius = schwarz(e).radius;
    Polytope ball = discretized_ball(n, radius, default_ball_count(n, opt));
    r.rearranged = sup_det_simplex(Region(ball), opt);
    r.ball_closed_form = ball_simplex_sup(n, radius);
    // the ball sits inside ball/rho and the functional has degree n under scaling
    const double rho = n == 1 ? 1.0 : inradius_ratio(ball, Vector(n), radius);
    r.slack = r.rearranged.value * (std::pow(rho, -n) - 1);
    r.gap = r.rearranged.value - r.original.value;
    r.pass = r.rearranged.value <= r.original.value + r.slack + 1e-12 * r.original.value;
    return r;
}

}  // namespace symineq
