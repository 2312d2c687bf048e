#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "symineq/geomcore/vector.hpp"

namespace symineq
{
// Predicate tolerance for hull construction, relative to the point-set scale.
inline constexpr double kHullEps = 1e-9;

struct Facet
{
    std::array<int, kMaxSetDim> v{};  // indices into HullData::vertices
    Vector normal;                    // outward unit normal
    double offset = 0;                // inside: dot(normal, x) <= offset
};

struct HullData
{
    int dim = 0;
    int affine_dim = 0;
    std::vector<Vector> vertices;  // extreme points, ordered by input index
    std::vector<int> source;       // input index of each vertex
    std::vector<Facet> facets;     // empty unless affine_dim == dim
    Vector interior;
    double volume = 0;
    double scale = 0;

    // Lower-dimensional description used when affine_dim < dim.
    Vector affine_origin;
    std::vector<Vector> affine_basis;
    std::shared_ptr<const HullData> reduced;

    bool contains(const Vector& x, double rel_tol = 1e-12) const;
};

HullData compute_hull(std::span<const Vector> points);

// Volume of the convex hull; 0 for affinely dependent input.
double hull_volume(std::span<const Vector> points);

}  // namespace symineq
