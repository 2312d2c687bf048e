#pragma once

#include "symineq/geomcore/ball.hpp"
#include "symineq/geomcore/polytope.hpp"

namespace symineq
{
struct LoewnerOptions
{
    double tolerance = 1e-7;  // relative slack of the Khachiyan optimality test
    int max_iterations = 200000;
};

// Minimum-volume enclosing ellipsoid of the vertices (Khachiyan iteration with
// Todd–Yildirim away steps) plus its 1/n shrink about the centre.
EllipsoidPair loewner_john(const Polytope& body, const LoewnerOptions& opt = {});

// Largest factor s such that center + s·axes·B lies inside the polytope.
double inner_scale_limit(const Ellipsoid& e, const Polytope& body);

// Box with half-widths l_i/sqrt(n) for an axis-aligned ellipsoid with semi-axes l_i.
Polytope inscribed_box(const Ellipsoid& e);

// Rotation R such that R·e has a diagonal shape matrix.
Rotation align_rotation(const Ellipsoid& e);

}  // namespace symineq
