#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "symineq/geomcore/hull.hpp"
#include "symineq/geomcore/vector.hpp"

namespace symineq
{
// Convex body given by its extreme points.
class Polytope
{
  public:
    // Hull of arbitrary points (dim <= 4); redundant points are dropped.
    static Polytope hull_of(std::span<const Vector> points);
    // Caller guarantees every point is extreme (e.g. samples on a sphere, or R^9 data).
    static Polytope from_extreme_points(std::vector<Vector> vertices);

    int dim() const { return dim_; }
    std::size_t size() const { return vertices_.size(); }
    const std::vector<Vector>& vertices() const { return vertices_; }
    const Vector& vertex(std::size_t i) const { return vertices_[i]; }

    // Facet description and volume are computed on first use (dim <= 4 only).
    const HullData& hull() const;
    double volume() const { return hull().volume; }
    bool contains(const Vector& x, double rel_tol = 1e-12) const { return hull().contains(x, rel_tol); }

    double support(const Vector& u) const;
    double diameter() const;
    double max_norm() const;
    Vector vertex_mean() const;

    // x -> m·x + shift; extreme points map to extreme points when m is invertible.
    Polytope transformed(const Matrix& m, const Vector& shift) const;
    Polytope transformed(const Matrix& m) const { return transformed(m, Vector(dim_)); }
    Polytope translated(const Vector& t) const;
    Polytope scaled(double s) const;

  private:
    struct Cache
    {
        std::once_flag once;
        std::unique_ptr<HullData> hull;
    };

    Polytope(int dim, std::vector<Vector> v, std::unique_ptr<HullData> hull);

    int dim_ = 0;
    std::vector<Vector> vertices_;
    std::shared_ptr<Cache> cache_;
};

Polytope convex_hull(std::span<const Vector> points);

Polytope box(const Vector& lo, const Vector& hi);
Polytope simplex_polytope(std::span<const Vector> points);

}  // namespace symineq
