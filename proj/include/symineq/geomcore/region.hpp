#pragma once

#include <variant>

#include "symineq/geomcore/ball.hpp"
#include "symineq/geomcore/gridset.hpp"
#include "symineq/geomcore/polytope.hpp"

namespace symineq
{
// A measurable set in one of the concrete models. Shell covers balls and the
// annuli produced by layer-cake rearrangement.
using Region = std::variant<Polytope, GridSet, Shell>;

int region_dim(const Region& r);
double region_volume(const Region& r);
bool region_contains(const Region& r, const Vector& x);
// Axis-aligned bounding box of the region.
void region_bounds(const Region& r, Vector& lo, Vector& hi);
// Largest |x| over the region, centred at `c`.
double region_radius(const Region& r, const Vector& c);

}  // namespace symineq
