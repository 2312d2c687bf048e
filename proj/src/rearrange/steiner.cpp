#include "symineq/rearrange/steiner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "symineq/geomcore/distance.hpp"
#include "symineq/geomcore/error.hpp"

namespace symineq
{
Ball schwarz(const Region& e)
{
    const int n = region_dim(e);
    const double v = region_volume(e);
    if (!(v > 0))
        throw DegenerateError("schwarz: set has zero volume");
    return Ball{Vector(n), std::pow(v / unit_ball_volume(n), 1.0 / n)};
}

Ball schwarz(const GridSet& e)
{
    return schwarz(Region(e));
}

Ball schwarz(const Polytope& e)
{
    return schwarz(Region(e));
}

GridFrame symmetric_along(const GridFrame& f, int axis)
{
    require(axis >= 0 && axis < f.dim, "axis out of range");
    const double mid = f.origin[axis] + 0.5 * static_cast<double>(f.shape[axis]) * f.cell;
    if (std::abs(mid) <= 1e-9 * f.cell && f.shape[axis] % 2 == 0)
        return f;
    const int64_t k = (f.shape[axis] + 1) / 2;
    Vector o = f.origin;
    o[axis] = -static_cast<double>(k) * f.cell;
    std::array<int64_t, kMaxSetDim> s = f.shape;
    s[axis] = 2 * k;
    return GridFrame(o, f.cell, std::span<const int64_t>(s.data(), f.dim));
}

GridSet steiner_grid(const GridSet& e, int axis)
{
    const GridFrame& f = e.frame();
    if (axis < 0 || axis >= f.dim)
        throw PreconditionError("steiner_grid: axis out of range");
    GridFrame g = symmetric_along(f, axis);
    const int64_t half = g.shape[axis] / 2;
    int64_t stride_in = 1, stride_out = 1;
    for (int k = 0; k < axis; ++k)
    {
        stride_in *= f.shape[k];
        stride_out *= g.shape[k];
    }
    const int64_t len = f.shape[axis];
    const int64_t lines = f.cell_count() / len;
    std::vector<uint64_t> w = empty_words(g);
    // line l splits into (low, high) indices around the axis
    for (int64_t l = 0; l < lines; ++l)
    {
        int64_t lowpart = l % stride_in, highpart = l / stride_in;
        int64_t base_in = lowpart + highpart * stride_in * len;
        int64_t c = 0;
        for (int64_t j = 0; j < len; ++j)
            c += e.test(base_in + j * stride_in);
        if (c == 0)
            continue;
        int64_t base_out = lowpart + highpart * stride_out * g.shape[axis];
        int64_t start = half - (c + 1) / 2;
        for (int64_t j = start; j < start + c; ++j)
            set_bit(w, base_out + j * stride_out);
    }
    return GridSet(g, std::move(w));
}

std::vector<Vector> perp_basis(const Vector& u)
{
    const int d = u.dim();
    std::vector<Vector> out;
    if (d == 2)
    {
        out.push_back(Vector{-u[1], u[0]});
        return out;
    }
    // columns 1..d-1 of the Householder reflection taking e_0 to u
    Vector v = u;
    v[0] -= 1.0;
    double vv = norm2(v);
    for (int j = 1; j < d; ++j)
    {
        Vector c = Vector::unit(d, j);
        if (vv > 0)
            c -= v * (2.0 * v[j] / vv);
        out.push_back(c);
    }
    return out;
}

StripLayout::StripLayout(const GridFrame& frame, const Vector& u, const Domain& domain) : frame_(frame), u_(u)
{
    require(u.dim() == frame.dim, "StripLayout: direction dimension mismatch");
    require(std::abs(norm(u) - 1.0) < 1e-12, "StripLayout: direction must be a unit vector");
    if (frame.cell_count() > std::numeric_limits<int32_t>::max())
        throw UnsupportedError("StripLayout: frame too large");
    perp_ = perp_basis(u);
    const int m = static_cast<int>(perp_.size());
    const int d = frame.dim;
    Vector up = frame.upper();
    for (int k = 0; k < m; ++k)
    {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (int mask = 0; mask < (1 << d); ++mask)
        {
            double s = 0;
            for (int a = 0; a < d; ++a)
                s += perp_[k][a] * ((mask >> a & 1) ? up[a] : frame.origin[a]);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        lo_[k] = static_cast<int64_t>(std::floor(lo / frame.cell)) - 1;
        span_[k] = static_cast<int64_t>(std::floor(hi / frame.cell)) - lo_[k] + 2;
    }
    int64_t nb = 1;
    for (int k = 0; k < m; ++k)
        nb *= span_[k];
    const int64_t n = frame.cell_count();
    std::vector<int64_t> binof(static_cast<std::size_t>(n));
    std::vector<double> t(static_cast<std::size_t>(n));
    offset_.assign(static_cast<std::size_t>(nb + 1), 0);
    const double r2 = domain.max_radius * domain.max_radius;
    for (int64_t i = 0; i < n; ++i)
    {
        Vector c = frame.center(i);
        t[i] = dot(c, u);
        if (std::abs(t[i]) > domain.max_abs_t || norm2(c) > r2)
        {
            binof[i] = -1;
            continue;
        }
        binof[i] = bin_of(i);
        ++offset_[binof[i] + 1];
    }
    for (int64_t b = 0; b < nb; ++b)
        offset_[b + 1] += offset_[b];
    order_.resize(static_cast<std::size_t>(offset_[nb]));
    std::vector<int64_t> fill(offset_.begin(), offset_.end() - 1);
    for (int64_t i = 0; i < n; ++i)
        if (binof[i] >= 0)
            order_[fill[binof[i]]++] = static_cast<int32_t>(i);
    for (int64_t b = 0; b < nb; ++b)
        std::sort(order_.begin() + offset_[b], order_.begin() + offset_[b + 1], [&](int32_t a, int32_t c) {
            double ta = std::abs(t[a]), tc = std::abs(t[c]);
            if (ta != tc)
                return ta < tc;
            if ((t[a] < 0) != (t[c] < 0))
                return t[a] < 0;
            return a < c;
        });
}

int64_t StripLayout::bin_of(int64_t cell) const
{
    Vector c = frame_.center(cell);
    int64_t b = 0, stride = 1;
    for (std::size_t k = 0; k < perp_.size(); ++k)
    {
        int64_t q = static_cast<int64_t>(std::floor(dot(c, perp_[k]) / frame_.cell)) - lo_[k];
        b += q * stride;
        stride *= span_[k];
    }
    return b;
}

void StripLayout::count(const GridSet& e, std::vector<int32_t>& counts) const
{
    require(e.frame().same_as(frame_), "StripLayout: grid frame mismatch");
    counts.assign(static_cast<std::size_t>(bins()), 0);
    e.for_each_occupied([&](int64_t i) { ++counts[bin_of(i)]; });
}

GridSet StripLayout::build(std::span<const int32_t> counts) const
{
    std::vector<uint64_t> w = empty_words(frame_);
    for (int64_t b = 0; b < bins(); ++b)
    {
        auto cells = bin(b);
        if (counts[b] > static_cast<int32_t>(cells.size()))
            throw std::logic_error("StripLayout: strip overflow");
        for (int32_t j = 0; j < counts[b]; ++j)
            set_bit(w, cells[j]);
    }
    return GridSet(frame_, std::move(w));
}

GridSet StripLayout::apply(const GridSet& e) const
{
    std::vector<int32_t> c;
    count(e, c);
    return build(c);
}

GridSet steiner_direction(const GridSet& e, const Vector& u)
{
    return StripLayout(e.frame(), u).apply(e);
}

namespace
{
struct ChainPoint
{
    double s, t;
};

// Range of t over the chain at abscissa s: vertices within tol of s plus the crossing of
// the segment that straddles s. The pointer advances monotonically.
void chain_range(const std::vector<ChainPoint>& ch, std::size_t& j, double s, double tol, double& tmin, double& tmax)
{
    while (j + 1 < ch.size() && ch[j + 1].s < s - tol)
        ++j;
    for (std::size_t k = j; k < ch.size() && ch[k].s <= s + tol; ++k)
    {
        const ChainPoint& a = ch[k];
        if (std::abs(a.s - s) <= tol)
        {
            tmin = std::min(tmin, a.t);
            tmax = std::max(tmax, a.t);
        }
        if (k + 1 < ch.size() && a.s < s && ch[k + 1].s > s)
        {
            const ChainPoint& b = ch[k + 1];
            double tt = a.t + (s - a.s) / (b.s - a.s) * (b.t - a.t);
            tmin = std::min(tmin, tt);
            tmax = std::max(tmax, tt);
        }
    }
}
}  // namespace

Polytope steiner_polytope(const Polytope& k, const Vector& u)
{
    if (k.dim() != 2)
        throw UnsupportedError("steiner_polytope: exact mode is planar only; rasterize and use steiner_grid");
    require(std::abs(norm(u) - 1.0) < 1e-12, "steiner_polytope: direction must be a unit vector");
    const HullData& h = k.hull();
    if (h.affine_dim < 2 || !(h.volume > 0))
        throw DegenerateError("steiner_polytope: degenerate polygon");
    const Vector w{-u[1], u[0]};
    const auto& ring = h.vertices;  // counter-clockwise
    const std::size_t m = ring.size();
    std::vector<ChainPoint> p(m);
    std::size_t imin = 0, imax = 0;
    for (std::size_t i = 0; i < m; ++i)
    {
        p[i] = {dot(ring[i], w), dot(ring[i], u)};
        if (p[i].s < p[imin].s || (p[i].s == p[imin].s && p[i].t < p[imin].t))
            imin = i;
        if (p[i].s > p[imax].s || (p[i].s == p[imax].s && p[i].t > p[imax].t))
            imax = i;
    }
    // two s-monotone chains from the leftmost to the rightmost vertex
    std::vector<ChainPoint> a, b;
    for (std::size_t i = imin;; i = (i + 1) % m)
    {
        a.push_back(p[i]);
        if (i == imax)
            break;
    }
    for (std::size_t i = imin;; i = (i + m - 1) % m)
    {
        b.push_back(p[i]);
        if (i == imax)
            break;
    }
    std::vector<double> ss(m);
    for (std::size_t i = 0; i < m; ++i)
        ss[i] = p[i].s;
    std::sort(ss.begin(), ss.end());
    const double tol = 1e-14 * h.scale;
    std::vector<double> uniq;
    for (double s : ss)
        if (uniq.empty() || s - uniq.back() > tol)
            uniq.push_back(s);
    std::vector<Vector> out;
    std::size_t ja = 0, jb = 0;
    for (double s : uniq)
    {
        double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
        chain_range(a, ja, s, tol, tmin, tmax);
        chain_range(b, jb, s, tol, tmin, tmax);
        double half = 0.5 * std::max(0.0, tmax - tmin);
        out.push_back(w * s + u * half);
        if (half > tol)
            out.push_back(w * s - u * half);
    }
    return Polytope::hull_of(out);
}

double chord_length(const Polytope& k, const Vector& u, double s)
{
    require(k.dim() == 2, "chord_length: planar polygons only");
    const Vector w{-u[1], u[0]};
    const auto& ring = k.hull().vertices;
    double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
    for (std::size_t i = 0; i < ring.size(); ++i)
    {
        const Vector& p = ring[i];
        const Vector& q = ring[(i + 1) % ring.size()];
        double sp = dot(p, w) - s, sq = dot(q, w) - s;
        if ((sp < 0 && sq < 0) || (sp > 0 && sq > 0))
            continue;
        if (sp == sq)
        {
            tmin = std::min({tmin, dot(p, u), dot(q, u)});
            tmax = std::max({tmax, dot(p, u), dot(q, u)});
            continue;
        }
        double lam = sp / (sp - sq);
        double t = dot(p, u) + lam * (dot(q, u) - dot(p, u));
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
    }
    return tmax > tmin ? tmax - tmin : 0.0;
}

double staircase_perimeter(const GridSet& e)
{
    const GridFrame& f = e.frame();
    const int d = f.dim;
    int64_t faces = 0;
    int64_t idx[kMaxSetDim];
    e.for_each_occupied([&](int64_t i) {
        f.unravel(i, idx);
        for (int k = 0; k < d; ++k)
            for (int dir = -1; dir <= 1; dir += 2)
            {
                int64_t j = idx[k] + dir;
                if (j < 0 || j >= f.shape[k])
                {
                    ++faces;
                    continue;
                }
                idx[k] = j;
                faces += !e.test(f.ravel(idx));
                idx[k] -= dir;
            }
    });
    return static_cast<double>(faces) * std::pow(f.cell, d - 1);
}

ConjugationReport steiner_direction_conjugation_check(const GridSet& e, const Rotation& rho, int axis)
{
    const int d = e.dim();
    require(rho.dim() == d, "conjugation check: rotation dimension mismatch");
    require(axis >= 0 && axis < d, "conjugation check: axis out of range");
    if (e.empty())
        throw DegenerateError("conjugation check: empty set");
    const double cell = e.cell();
    const double r = e.max_center_norm() + cell * std::sqrt(static_cast<double>(d));
    GridFrame w = GridFrame::symmetric(d, 1.42 * r + 3 * cell, cell);
    GridSet base = resample(e, w);
    Vector u = rho.apply(Vector::unit(d, axis));
    GridSet lhs = steiner_direction(base, u);
    Vector zero(d);
    GridSet pulled = transform_grid(base, rho.inverse().matrix(), zero, w);
    GridSet sym = steiner_grid(pulled, axis);
    GridSet rhs = transform_grid(sym, rho.matrix(), zero, w);
    ConjugationReport rep;
    rep.symdiff = symdiff_volume(lhs, rhs);
    rep.perimeter = staircase_perimeter(base);
    rep.bound = 3.0 * rep.perimeter * cell;
    rep.pass = rep.symdiff <= rep.bound;
    return rep;
}

}  // namespace symineq
