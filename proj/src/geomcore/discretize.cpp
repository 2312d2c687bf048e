#include "symineq/geomcore/discretize.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "symineq/geomcore/distance.hpp"
#include "symineq/geomcore/error.hpp"

namespace symineq
{
Polytope regular_polygon(int k, double radius, const Vector& center, double phase)
{
    require(k >= 3, "regular_polygon: need at least 3 vertices");
    require(radius > 0, "regular_polygon: radius must be positive");
    std::vector<Vector> v;
    v.reserve(k);
    for (int i = 0; i < k; ++i)
    {
        double t = phase + 2.0 * std::numbers::pi * i / k;
        v.push_back(Vector{center[0] + radius * std::cos(t), center[1] + radius * std::sin(t)});
    }
    return Polytope::hull_of(v);
}

std::vector<Vector> sphere_points(int dim, int count, double radius)
{
    std::vector<Vector> pts = direction_sequence(dim, count);
    for (Vector& p : pts)
        p *= radius;
    return pts;
}

Polytope discretized_ball(int dim, double radius, int count, const Vector& center)
{
    require(center.dim() == dim, "discretized_ball: center dimension mismatch");
    if (dim == 1)
        return Polytope::hull_of(std::vector<Vector>{Vector{center[0] - radius}, Vector{center[0] + radius}});
    if (dim == 2)
        return regular_polygon(count, radius, center);
    std::vector<Vector> pts = sphere_points(dim, count, radius);
    for (Vector& p : pts)
        p += center;
    if (dim <= kMaxSetDim)
        return Polytope::hull_of(pts);
    return Polytope::from_extreme_points(std::move(pts));
}

Polytope discretized_ball(int dim, double radius, int count)
{
    return discretized_ball(dim, radius, count, Vector(dim));
}

double inradius_ratio(const Polytope& p, const Vector& center, double radius)
{
    const HullData& h = p.hull();
    double best = std::numeric_limits<double>::infinity();
    for (const Facet& f : h.facets)
        best = std::min(best, f.offset - dot(f.normal, center));
    return best / radius;
}

}  // namespace symineq
