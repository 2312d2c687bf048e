#include "symineq/geomcore/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "symineq/geomcore/error.hpp"

namespace symineq
{
namespace
{
double radical_inverse(uint64_t i, uint64_t base)
{
    double inv = 1.0 / static_cast<double>(base), f = inv, r = 0;
    while (i > 0)
    {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

constexpr uint64_t kPrimes[16] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
}  // namespace

std::vector<Vector> direction_sequence(int dim, int count)
{
    require(dim >= 1 && dim <= kMaxVectorDim, "direction_sequence: bad dimension");
    require(count >= 1, "direction_sequence: need at least one direction");
    std::vector<Vector> out;
    out.reserve(count);
    if (dim == 1)
    {
        for (int i = 0; i < count; ++i)
            out.push_back(Vector{(i % 2 == 0) ? 1.0 : -1.0});
        return out;
    }
    if (dim == 2)
    {
        for (int i = 0; i < count; ++i)
        {
            double t = 2.0 * std::numbers::pi * i / count;
            out.push_back(Vector{std::cos(t), std::sin(t)});
        }
        return out;
    }
    if (dim == 3)
    {
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < count; ++i)
        {
            double z = 1.0 - (2.0 * i + 1.0) / count;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double phi = golden * i;
            out.push_back(Vector{r * std::cos(phi), r * std::sin(phi), z});
        }
        return out;
    }
    for (uint64_t i = 1; static_cast<int>(out.size()) < count; ++i)
    {
        Vector g(dim);
        for (int k = 0; k < dim; ++k)
        {
            double h = radical_inverse(i, kPrimes[k]);
            g[k] = std::numbers::sqrt2 * boost::math::erf_inv(2.0 * h - 1.0);
        }
        double len = norm(g);
        if (len > 1e-12)
            out.push_back(g * (1.0 / len));
    }
    return out;
}

double support_distance(const SupportFunction& a, const SupportFunction& b, int dim, int directions)
{
    require(directions >= 100, "hausdorff_distance: need at least 100 directions");
    double best = 0;
    for (const Vector& u : direction_sequence(dim, directions))
        best = std::max(best, std::abs(a(u) - b(u)));
    return best;
}

double hausdorff_distance(const Polytope& a, const Polytope& b, int directions)
{
    require(a.dim() == b.dim(), "hausdorff_distance: dimension mismatch");
    return support_distance([&](const Vector& u) { return a.support(u); },
                            [&](const Vector& u) { return b.support(u); }, a.dim(), directions);
}

double hausdorff_distance(const Polytope& a, const Ball& b, int directions)
{
    require(a.dim() == b.dim(), "hausdorff_distance: dimension mismatch");
    return support_distance([&](const Vector& u) { return a.support(u); },
                            [&](const Vector& u) { return dot(b.center, u) + b.radius; }, a.dim(), directions);
}

double hausdorff_distance(const Ball& a, const Ball& b, int directions)
{
    require(a.dim() == b.dim(), "hausdorff_distance: dimension mismatch");
    return support_distance([&](const Vector& u) { return dot(a.center, u) + a.radius; },
                            [&](const Vector& u) { return dot(b.center, u) + b.radius; }, a.dim(), directions);
}

double grid_support(const GridSet& g, const Vector& u)
{
    const GridFrame& f = g.frame();
    double corner = 0;
    for (int k = 0; k < f.dim; ++k)
        corner += 0.5 * f.cell * std::abs(u[k]);
    double best = -std::numeric_limits<double>::infinity();
    g.for_each_occupied([&](int64_t i) { best = std::max(best, dot(f.center(i), u)); });
    return best + corner;
}

double hausdorff_distance(const GridSet& a, const Ball& b, int directions)
{
    require(a.dim() == b.dim(), "hausdorff_distance: dimension mismatch");
    if (a.empty())
        throw DegenerateError("hausdorff_distance: empty grid set");
    // a linear functional peaks at an end of each axis-0 line, so only the first
    // and last occupied cell of every line matter
    const GridFrame& f = a.frame();
    std::vector<Vector> centers;
    int64_t line = -1, last = -1;
    a.for_each_occupied([&](int64_t i) {
        int64_t l = i / f.shape[0];
        if (l != line)
        {
            if (last >= 0)
                centers.push_back(f.center(last));
            centers.push_back(f.center(i));
            line = l;
        }
        last = i;
    });
    centers.push_back(f.center(last));
    return support_distance(
        [&](const Vector& u) {
            double corner = 0;
            for (int k = 0; k < f.dim; ++k)
                corner += 0.5 * f.cell * std::abs(u[k]);
            double best = -std::numeric_limits<double>::infinity();
            for (const Vector& c : centers)
                best = std::max(best, dot(c, u));
            return best + corner;
        },
        [&](const Vector& u) { return dot(b.center, u) + b.radius; }, a.dim(), directions);
}

double symdiff_volume(const GridSet& a, const GridSet& b, bool resample_grids)
{
    require(a.dim() == b.dim(), "symdiff_volume: dimension mismatch");
    const GridFrame& fa = a.frame();
    const GridFrame& fb = b.frame();
    if (fa.same_as(fb))
    {
        int64_t c = 0;
        for (std::size_t w = 0; w < a.words().size(); ++w)
            c += std::popcount(a.words()[w] ^ b.words()[w]);
        return static_cast<double>(c) * fa.cell_volume();
    }
    if (fa.aligned_with(fb))
    {
        // count occupied cells of each set that the other lacks, walking lattice offsets
        const int d = fa.dim;
        int64_t off[kMaxSetDim];
        for (int k = 0; k < d; ++k)
            off[k] = static_cast<int64_t>(std::llround((fa.origin[k] - fb.origin[k]) / fa.cell));
        auto missing = [d](const GridSet& from, const GridSet& other, const int64_t* shift) {
            const GridFrame& ff = from.frame();
            const GridFrame& fo = other.frame();
            int64_t idx[kMaxSetDim], j[kMaxSetDim];
            int64_t c = 0;
            from.for_each_occupied([&](int64_t i) {
                ff.unravel(i, idx);
                bool inside = true;
                for (int k = 0; k < d; ++k)
                {
                    j[k] = idx[k] + shift[k];
                    if (j[k] < 0 || j[k] >= fo.shape[k])
                        inside = false;
                }
                if (!inside || !other.test(fo.ravel(j)))
                    ++c;
            });
            return c;
        };
        int64_t neg[kMaxSetDim];
        for (int k = 0; k < d; ++k)
            neg[k] = -off[k];
        int64_t c = missing(a, b, off) + missing(b, a, neg);
        return static_cast<double>(c) * fa.cell_volume();
    }
    if (!resample_grids)
        throw PreconditionError("symdiff_volume: grid frames differ and resampling was not requested");
    double cell = std::min(fa.cell, fb.cell);
    Vector lo(fa.dim), hi(fa.dim);
    Vector ua = fa.upper(), ub = fb.upper();
    for (int k = 0; k < fa.dim; ++k)
    {
        lo[k] = std::min(fa.origin[k], fb.origin[k]);
        hi[k] = std::max(ua[k], ub[k]);
    }
    GridFrame common = GridFrame::covering(lo, hi, cell);
    return symdiff_volume(resample(a, common), resample(b, common), false);
}

namespace
{
double cross2(const Vector& a, const Vector& b)
{
    return a[0] * b[1] - a[1] * b[0];
}

// Signed area of triangle (0, a, b) intersected with the disk of radius r at 0.
double triangle_disk(const Vector& a, const Vector& b, double r)
{
    const double r2 = r * r;
    Vector d = b - a;
    double qa = norm2(d), qb = 2 * dot(a, d), qc = norm2(a) - r2;
    std::vector<Vector> pts{a};
    if (qa > 0)
    {
        double disc = qb * qb - 4 * qa * qc;
        if (disc > 0)
        {
            double sq = std::sqrt(disc);
            double t1 = (-qb - sq) / (2 * qa), t2 = (-qb + sq) / (2 * qa);
            if (t1 > 0 && t1 < 1)
                pts.push_back(a + d * t1);
            if (t2 > 0 && t2 < 1)
                pts.push_back(a + d * t2);
        }
    }
    pts.push_back(b);
    double area = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    {
        const Vector& p = pts[i];
        const Vector& q = pts[i + 1];
        Vector mid = (p + q) * 0.5;
        if (norm2(mid) <= r2)
            area += 0.5 * cross2(p, q);
        else
            area += 0.5 * r2 * std::atan2(cross2(p, q), dot(p, q));
    }
    return area;
}
}  // namespace

double intersection_area(const Polytope& p, const Ball& b)
{
    require(p.dim() == 2 && b.dim() == 2, "intersection_area: planar inputs only");
    const HullData& h = p.hull();
    if (h.affine_dim < 2)
        return 0.0;
    const auto& ring = h.vertices;
    double area = 0;
    for (std::size_t i = 0; i < ring.size(); ++i)
        area += triangle_disk(ring[i] - b.center, ring[(i + 1) % ring.size()] - b.center, b.radius);
    return std::max(0.0, area);
}

double symdiff_volume(const Polytope& p, const Ball& b)
{
    return std::max(0.0, p.volume() + b.volume() - 2.0 * intersection_area(p, b));
}

}  // namespace symineq
