#include "symineq/geomcore/hull.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "symineq/geomcore/error.hpp"
#include "symineq/geomcore/linalg.hpp"

namespace symineq
{
namespace
{
struct Frame
{
    Vector origin;
    std::vector<Vector> basis;
    std::vector<int> simplex;
};

bool lex_less(const Vector& a, const Vector& b)
{
    for (int i = 0; i < a.dim(); ++i)
    {
        if (a[i] < b[i])
            return true;
        if (a[i] > b[i])
            return false;
    }
    return false;
}

// Greedy farthest-point basis of the affine hull.
Frame affine_frame(std::span<const Vector> pts, double tol)
{
    Frame f;
    int i0 = 0;
    for (int i = 1; i < static_cast<int>(pts.size()); ++i)
        if (lex_less(pts[i], pts[i0]))
            i0 = i;
    f.origin = pts[i0];
    f.simplex.push_back(i0);
    const int dim = pts[0].dim();
    while (static_cast<int>(f.basis.size()) < dim)
    {
        int best = -1;
        double bestd = tol;
        Vector bestr;
        for (int i = 0; i < static_cast<int>(pts.size()); ++i)
        {
            Vector r = pts[i] - f.origin;
            for (int pass = 0; pass < 2; ++pass)
                for (const Vector& b : f.basis)
                    r -= b * dot(r, b);
            double d = norm(r);
            if (d > bestd)
            {
                best = i;
                bestd = d;
                bestr = r;
            }
        }
        if (best < 0)
            break;
        f.basis.push_back(bestr * (1.0 / bestd));
        f.simplex.push_back(best);
    }
    return f;
}

double point_scale(std::span<const Vector> pts)
{
    const int dim = pts[0].dim();
    double s = 0;
    for (int k = 0; k < dim; ++k)
    {
        double lo = pts[0][k], hi = pts[0][k];
        for (const Vector& p : pts)
        {
            lo = std::min(lo, p[k]);
            hi = std::max(hi, p[k]);
        }
        s = std::max(s, hi - lo);
    }
    return s;
}

// Normal of the hyperplane through d points in R^d via signed cofactors.
Vector hyperplane_normal(const Vector* const* q, int d)
{
    double e[4][4];
    for (int i = 1; i < d; ++i)
        for (int k = 0; k < d; ++k)
            e[i - 1][k] = (*q[i])[k] - (*q[0])[k];
    Vector n(d);
    double minor[9];
    for (int j = 0; j < d; ++j)
    {
        int idx = 0;
        for (int r = 0; r < d - 1; ++r)
            for (int c = 0; c < d; ++c)
                if (c != j)
                    minor[idx++] = e[r][c];
        double m = det_small(minor, d - 1);
        n[j] = (j % 2 == 0) ? m : -m;
    }
    return n;
}

struct WorkFacet
{
    std::array<int, 4> v{};
    Vector normal;
    double offset = 0;
    bool alive = true;
};

uint64_t ridge_key(const int* idx, int count)
{
    int s[3];
    for (int i = 0; i < count; ++i)
        s[i] = idx[i];
    std::sort(s, s + count);
    uint64_t key = 0;
    for (int i = 0; i < count; ++i)
        key = (key << 21) | static_cast<uint64_t>(s[i]);
    return key;
}

bool make_facet(std::span<const Vector> pts, const std::array<int, 4>& v, int d, const Vector& inside,
                WorkFacet& out)
{
    const Vector* q[4];
    for (int i = 0; i < d; ++i)
        q[i] = &pts[v[i]];
    Vector n = hyperplane_normal(q, d);
    double len = norm(n);
    if (!(len > 0))
        return false;
    n *= 1.0 / len;
    double off = dot(n, *q[0]);
    if (dot(n, inside) - off > 0)
    {
        n *= -1.0;
        off = -off;
    }
    out.v = v;
    out.normal = n;
    out.offset = off;
    out.alive = true;
    return true;
}

// Beneath-beyond insertion for d = 3, 4; returns alive facets over input indices.
std::vector<WorkFacet> incremental_hull(std::span<const Vector> pts, const std::vector<int>& simplex,
                                        double eps, Vector& interior)
{
    const int d = pts[0].dim();
    interior = Vector(d);
    for (int i : simplex)
        interior += pts[i];
    interior *= 1.0 / static_cast<double>(simplex.size());

    std::vector<WorkFacet> facets;
    for (int skip = 0; skip <= d; ++skip)
    {
        std::array<int, 4> v{};
        int k = 0;
        for (int i = 0; i <= d; ++i)
            if (i != skip)
                v[k++] = simplex[i];
        WorkFacet f;
        if (!make_facet(pts, v, d, interior, f))
            throw DegenerateError("hull: initial simplex is degenerate");
        facets.push_back(f);
    }

    std::vector<int> order;
    std::vector<char> in_simplex(pts.size(), 0);
    for (int i : simplex)
        in_simplex[i] = 1;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i)
        if (!in_simplex[i])
            order.push_back(i);
    std::vector<double> dist(pts.size());
    for (int i : order)
        dist[i] = distance(pts[i], interior);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] > dist[b]; });

    std::vector<int> visible;
    std::unordered_map<uint64_t, std::pair<int, std::array<int, 3>>> ridges;
    std::size_t alive_count = facets.size();
    for (int p : order)
    {
        visible.clear();
        for (int f = 0; f < static_cast<int>(facets.size()); ++f)
            if (facets[f].alive && dot(facets[f].normal, pts[p]) - facets[f].offset > eps)
                visible.push_back(f);
        if (visible.empty())
            continue;
        ridges.clear();
        for (int f : visible)
        {
            for (int skip = 0; skip < d; ++skip)
            {
                std::array<int, 3> r{};
                int k = 0;
                for (int i = 0; i < d; ++i)
                    if (i != skip)
                        r[k++] = facets[f].v[i];
                auto& slot = ridges[ridge_key(r.data(), d - 1)];
                slot.first += 1;
                slot.second = r;
            }
        }
        for (int f : visible)
            facets[f].alive = false;
        alive_count -= visible.size();
        for (const auto& [key, slot] : ridges)
        {
            if (slot.first != 1)
                continue;
            std::array<int, 4> v{};
            for (int i = 0; i < d - 1; ++i)
                v[i] = slot.second[i];
            v[d - 1] = p;
            WorkFacet nf;
            if (make_facet(pts, v, d, interior, nf))
            {
                facets.push_back(nf);
                ++alive_count;
            }
        }
        if (facets.size() > 4 * alive_count + 64)
        {
            std::erase_if(facets, [](const WorkFacet& f) { return !f.alive; });
        }
    }
    std::erase_if(facets, [](const WorkFacet& f) { return !f.alive; });
    // ridge map iteration order is unspecified; sort for reproducible output
    for (auto& f : facets)
        std::sort(f.v.begin(), f.v.begin() + d);
    std::sort(facets.begin(), facets.end(), [d](const WorkFacet& a, const WorkFacet& b) {
        return std::lexicographical_compare(a.v.begin(), a.v.begin() + d, b.v.begin(), b.v.begin() + d);
    });
    return facets;
}

// A hull vertex is extreme iff the normals of its incident facets span R^d.
std::vector<int> extreme_subset(const std::vector<WorkFacet>& facets, int d, std::size_t npts)
{
    std::vector<std::vector<int>> incident(npts);
    for (int f = 0; f < static_cast<int>(facets.size()); ++f)
        for (int i = 0; i < d; ++i)
            incident[facets[f].v[i]].push_back(f);
    std::vector<int> keep;
    for (int p = 0; p < static_cast<int>(npts); ++p)
    {
        if (incident[p].empty())
            continue;
        Matrix m(static_cast<int>(incident[p].size()), d);
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < d; ++c)
                m(r, c) = facets[incident[p][r]].normal[c];
        Eigen::JacobiSVD<Matrix> svd(m);
        const auto& s = svd.singularValues();
        if (s.size() >= d && s[d - 1] > 1e-7)
            keep.push_back(p);
    }
    return keep;
}

HullData full_dim_hull(std::span<const Vector> pts, const Frame& frame, double scale);

HullData hull_impl(std::span<const Vector> pts)
{
    const int dim = pts[0].dim();
    HullData h;
    h.dim = dim;
    h.scale = point_scale(pts);
    const double tol = kHullEps * std::max(h.scale, 1e-300);
    Frame frame = affine_frame(pts, tol);
    h.affine_dim = static_cast<int>(frame.basis.size());
    if (h.affine_dim == dim)
        return full_dim_hull(pts, frame, h.scale);

    h.affine_origin = frame.origin;
    h.affine_basis = frame.basis;
    h.interior = frame.origin;
    if (h.affine_dim == 0)
    {
        h.vertices = {pts[frame.simplex[0]]};
        h.source = {frame.simplex[0]};
        return h;
    }
    std::vector<Vector> proj;
    proj.reserve(pts.size());
    for (const Vector& p : pts)
    {
        Vector y(h.affine_dim);
        for (int j = 0; j < h.affine_dim; ++j)
            y[j] = dot(p - frame.origin, frame.basis[j]);
        proj.push_back(y);
    }
    auto sub = std::make_shared<HullData>(hull_impl(proj));
    for (int s : sub->source)
    {
        h.vertices.push_back(pts[s]);
        h.source.push_back(s);
    }
    Vector c(dim);
    for (const Vector& v : h.vertices)
        c += v;
    h.interior = c * (1.0 / static_cast<double>(h.vertices.size()));
    h.reduced = sub;
    return h;
}

HullData full_dim_hull(std::span<const Vector> pts, const Frame& frame, double scale)
{
    const int d = pts[0].dim();
    const double eps = kHullEps * scale;
    HullData h;
    h.dim = d;
    h.affine_dim = d;
    h.scale = scale;

    if (d == 1)
    {
        int lo = 0, hi = 0;
        for (int i = 1; i < static_cast<int>(pts.size()); ++i)
        {
            if (pts[i][0] < pts[lo][0])
                lo = i;
            if (pts[i][0] > pts[hi][0])
                hi = i;
        }
        int a = std::min(lo, hi), b = std::max(lo, hi);
        h.vertices = {pts[a], pts[b]};
        h.source = {a, b};
        Facet fl, fh;
        fl.v[0] = (a == lo) ? 0 : 1;
        fl.normal = Vector{-1.0};
        fl.offset = -pts[lo][0];
        fh.v[0] = (a == hi) ? 0 : 1;
        fh.normal = Vector{1.0};
        fh.offset = pts[hi][0];
        h.facets = {fl, fh};
        h.interior = Vector{0.5 * (pts[lo][0] + pts[hi][0])};
        h.volume = pts[hi][0] - pts[lo][0];
        return h;
    }

    if (d == 2)
    {
        std::vector<int> idx(pts.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) {
            if (pts[a][0] != pts[b][0])
                return pts[a][0] < pts[b][0];
            if (pts[a][1] != pts[b][1])
                return pts[a][1] < pts[b][1];
            return a < b;
        });
        // twice-area threshold; much tighter than eps so that dropping a near-collinear
        // vertex never moves the area by more than ~1e-13 relative
        const double tol2 = 1e-13 * scale * scale;
        auto cross = [&](int o, int a, int b) {
            return (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1])
                   - (pts[a][1] - pts[o][1]) * (pts[b][0] - pts[o][0]);
        };
        // pop on a right turn, or on a near-collinear triple whose middle point lies
        // between its neighbours; a nearly flat triple that doubles back keeps its middle
        auto drop = [&](int o, int a, int b) {
            double c = cross(o, a, b);
            if (c < 0)
                return true;
            if (c > tol2)
                return false;
            return (pts[a][0] - pts[o][0]) * (pts[b][0] - pts[a][0]) + (pts[a][1] - pts[o][1]) * (pts[b][1] - pts[a][1]) >= 0;
        };
        std::vector<int> chain(2 * idx.size());
        int k = 0;
        for (int i : idx)
        {
            while (k >= 2 && drop(chain[k - 2], chain[k - 1], i))
                --k;
            chain[k++] = i;
        }
        for (int t = static_cast<int>(idx.size()) - 2, lower = k + 1; t >= 0; --t)
        {
            int i = idx[t];
            while (k >= lower && drop(chain[k - 2], chain[k - 1], i))
                --k;
            chain[k++] = i;
        }
        chain.resize(k - 1);  // last equals first
        // counter-clockwise ring; store vertices in ring order
        for (int i : chain)
        {
            h.vertices.push_back(pts[i]);
            h.source.push_back(i);
        }
        const int m = static_cast<int>(chain.size());
        double area = 0;
        Vector c(2);
        for (int i = 0; i < m; ++i)
        {
            const Vector& a = h.vertices[i];
            const Vector& b = h.vertices[(i + 1) % m];
            area += a[0] * b[1] - a[1] * b[0];
            c += a;
        }
        h.volume = 0.5 * std::abs(area);
        h.interior = c * (1.0 / m);
        for (int i = 0; i < m; ++i)
        {
            const Vector& a = h.vertices[i];
            const Vector& b = h.vertices[(i + 1) % m];
            Facet f;
            f.v[0] = i;
            f.v[1] = (i + 1) % m;
            Vector n{b[1] - a[1], a[0] - b[0]};
            n *= 1.0 / norm(n);
            f.normal = n;
            f.offset = dot(n, a);
            h.facets.push_back(f);
        }
        return h;
    }

    if (d > kMaxSetDim)
        throw UnsupportedError("convex hulls are limited to dimension 4");

    Vector interior;
    std::vector<WorkFacet> wf = incremental_hull(pts, frame.simplex, eps, interior);
    std::vector<int> keep = extreme_subset(wf, d, pts.size());
    std::vector<char> used(pts.size(), 0);
    std::size_t used_count = 0;
    for (const auto& f : wf)
        for (int i = 0; i < d; ++i)
            if (!used[f.v[i]])
            {
                used[f.v[i]] = 1;
                ++used_count;
            }
    if (keep.size() < used_count)
    {
        // drop non-extreme vertices and rebuild from the extreme set alone
        std::vector<Vector> sub;
        sub.reserve(keep.size());
        for (int i : keep)
            sub.push_back(pts[i]);
        HullData r = hull_impl(sub);
        for (int& s : r.source)
            s = keep[s];
        return r;
    }

    std::vector<int> remap(pts.size(), -1);
    for (int p = 0; p < static_cast<int>(pts.size()); ++p)
        if (used[p])
        {
            remap[p] = static_cast<int>(h.vertices.size());
            h.vertices.push_back(pts[p]);
            h.source.push_back(p);
        }
    h.interior = interior;
    const double fact = factorial(d);
    double vol = 0;
    double m[16];
    for (const auto& f : wf)
    {
        Facet out;
        for (int i = 0; i < d; ++i)
            out.v[i] = remap[f.v[i]];
        out.normal = f.normal;
        out.offset = f.offset;
        h.facets.push_back(out);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k)
                m[i * d + k] = pts[f.v[i]][k] - interior[k];
        vol += std::abs(det_small(m, d));
    }
    h.volume = vol / fact;
    return h;
}

}  // namespace

bool HullData::contains(const Vector& x, double rel_tol) const
{
    const double tol = rel_tol * std::max(scale, 1.0);
    if (affine_dim == dim)
    {
        for (const Facet& f : facets)
            if (dot(f.normal, x) - f.offset > tol)
                return false;
        return true;
    }
    Vector r = x - affine_origin;
    Vector y(std::max(affine_dim, 1));
    for (int j = 0; j < affine_dim; ++j)
    {
        y[j] = dot(r, affine_basis[j]);
        r -= affine_basis[j] * y[j];
    }
    if (norm(r) > tol)
        return false;
    if (affine_dim == 0)
        return true;
    return reduced->contains(y, rel_tol);
}

HullData compute_hull(std::span<const Vector> points)
{
    if (points.empty())
        throw PreconditionError("hull of an empty point set");
    const int dim = points[0].dim();
    for (const Vector& p : points)
    {
        if (p.dim() != dim)
            throw PreconditionError("hull input has mixed dimensions");
        if (!p.is_finite())
            throw PreconditionError("hull input has non-finite coordinates");
    }
    if (dim > kMaxSetDim)
        throw UnsupportedError("convex hulls are limited to dimension 4");
    return hull_impl(points);
}

double hull_volume(std::span<const Vector> points)
{
    return compute_hull(points).volume;
}

}  // namespace symineq
