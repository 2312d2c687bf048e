#pragma once

#include "symineq/geomcore/polytope.hpp"

namespace symineq
{
// Regular k-gon inscribed in the circle of the given radius, first vertex at angle `phase`.
Polytope regular_polygon(int k, double radius, const Vector& center = Vector{0.0, 0.0}, double phase = 0.0);

// Deterministic points on the sphere of radius `radius` in R^dim.
std::vector<Vector> sphere_points(int dim, int count, double radius = 1.0);

// Polytope inscribed in B(center, radius): 2 endpoints in 1D, a k-gon in 2D,
// sphere samples above (3D and 4D carry facets; higher dimensions are vertex-only).
Polytope discretized_ball(int dim, double radius, int count, const Vector& center);
Polytope discretized_ball(int dim, double radius, int count);

// Largest rho with B(center, rho·radius) inside the polytope, for a discretized ball.
double inradius_ratio(const Polytope& p, const Vector& center, double radius);

}  // namespace symineq
