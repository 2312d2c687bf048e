#pragma once

#include <functional>
#include <vector>

#include "symineq/geomcore/ball.hpp"
#include "symineq/geomcore/gridset.hpp"
#include "symineq/geomcore/polytope.hpp"

namespace symineq
{
// Deterministic, roughly uniform unit directions: equally spaced angles in 2D,
// a Fibonacci lattice in 3D, an inverse-normal Halton sequence above.
std::vector<Vector> direction_sequence(int dim, int count);

using SupportFunction = std::function<double(const Vector&)>;

// max over the direction sequence of |h_A(u) - h_B(u)|.
double support_distance(const SupportFunction& a, const SupportFunction& b, int dim, int directions);

double hausdorff_distance(const Polytope& a, const Polytope& b, int directions = 256);
double hausdorff_distance(const Polytope& a, const Ball& b, int directions = 256);
double hausdorff_distance(const Ball& a, const Ball& b, int directions = 256);

// Support function of the union of occupied cells.
double grid_support(const GridSet& g, const Vector& u);
double hausdorff_distance(const GridSet& a, const Ball& b, int directions = 256);

// |A △ B|. Frames must coincide or share a lattice; otherwise both are
// resampled onto a common frame when `resample` is set, else it throws.
double symdiff_volume(const GridSet& a, const GridSet& b, bool resample = false);

// Exact area of a planar convex polygon intersected with a disk.
double intersection_area(const Polytope& p, const Ball& b);
// |P △ B| for a planar polygon and a disk, from the exact intersection area.
double symdiff_volume(const Polytope& p, const Ball& b);

}  // namespace symineq
