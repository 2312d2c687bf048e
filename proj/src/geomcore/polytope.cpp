#include "symineq/geomcore/polytope.hpp"

#include <algorithm>
#include <limits>

#include "symineq/geomcore/error.hpp"

namespace symineq
{
Polytope::Polytope(int dim, std::vector<Vector> v, std::unique_ptr<HullData> hull)
    : dim_(dim), vertices_(std::move(v)), cache_(std::make_shared<Cache>())
{
    if (hull)
    {
        cache_->hull = std::move(hull);
        std::call_once(cache_->once, [] {});
    }
}

Polytope Polytope::hull_of(std::span<const Vector> points)
{
    auto h = std::make_unique<HullData>(compute_hull(points));
    std::vector<Vector> v = h->vertices;
    int dim = h->dim;
    return Polytope(dim, std::move(v), std::move(h));
}

Polytope Polytope::from_extreme_points(std::vector<Vector> vertices)
{
    if (vertices.empty())
        throw PreconditionError("polytope needs at least one vertex");
    const int dim = vertices[0].dim();
    for (const Vector& v : vertices)
    {
        if (v.dim() != dim)
            throw PreconditionError("polytope vertices have mixed dimensions");
        if (!v.is_finite())
            throw PreconditionError("polytope vertex is not finite");
    }
    return Polytope(dim, std::move(vertices), nullptr);
}

const HullData& Polytope::hull() const
{
    std::call_once(cache_->once, [this] {
        if (dim_ > kMaxSetDim)
            throw UnsupportedError("facet description needs dimension <= 4");
        cache_->hull = std::make_unique<HullData>(compute_hull(vertices_));
    });
    if (!cache_->hull)
        throw UnsupportedError("facet description needs dimension <= 4");
    return *cache_->hull;
}

double Polytope::support(const Vector& u) const
{
    double best = -std::numeric_limits<double>::infinity();
    for (const Vector& v : vertices_)
        best = std::max(best, dot(v, u));
    return best;
}

double Polytope::diameter() const
{
    double best = 0;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        for (std::size_t j = i + 1; j < vertices_.size(); ++j)
            best = std::max(best, norm2(vertices_[i] - vertices_[j]));
    return std::sqrt(best);
}

double Polytope::max_norm() const
{
    double best = 0;
    for (const Vector& v : vertices_)
        best = std::max(best, norm2(v));
    return std::sqrt(best);
}

Vector Polytope::vertex_mean() const
{
    Vector c(dim_);
    for (const Vector& v : vertices_)
        c += v;
    return c * (1.0 / static_cast<double>(vertices_.size()));
}

Polytope Polytope::transformed(const Matrix& m, const Vector& shift) const
{
    require(m.rows() == dim_ && m.cols() == dim_, "transform dimension mismatch");
    std::vector<Vector> out;
    out.reserve(vertices_.size());
    for (const Vector& v : vertices_)
        out.push_back(apply(m, v) + shift);
    if (std::abs(m.determinant()) > 0)
        return from_extreme_points(std::move(out));
    return hull_of(out);
}

Polytope Polytope::translated(const Vector& t) const
{
    return transformed(Matrix::Identity(dim_, dim_), t);
}

Polytope Polytope::scaled(double s) const
{
    require(s != 0, "zero scaling");
    return transformed(Matrix::Identity(dim_, dim_) * s, Vector(dim_));
}

Polytope convex_hull(std::span<const Vector> points)
{
    return Polytope::hull_of(points);
}

Polytope box(const Vector& lo, const Vector& hi)
{
    require(lo.dim() == hi.dim(), "box corner dimension mismatch");
    const int n = lo.dim();
    require(n <= kMaxSetDim + 5, "box dimension too large");
    std::vector<Vector> corners;
    for (int mask = 0; mask < (1 << n); ++mask)
    {
        Vector c(n);
        for (int k = 0; k < n; ++k)
            c[k] = (mask >> k & 1) ? hi[k] : lo[k];
        corners.push_back(c);
    }
    if (n > kMaxSetDim)
        return Polytope::from_extreme_points(std::move(corners));
    return Polytope::hull_of(corners);
}

Polytope simplex_polytope(std::span<const Vector> points)
{
    return Polytope::hull_of(points);
}

}  // namespace symineq
