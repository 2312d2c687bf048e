#include "symineq/geomcore/gridset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symineq/geomcore/error.hpp"

namespace symineq
{
namespace
{
constexpr int64_t kMaxCells = int64_t{1} << 32;
}

GridFrame::GridFrame(Vector o, double c, std::span<const int64_t> s) : dim(o.dim()), origin(o), cell(c)
{
    if (dim < 1 || dim > kMaxSetDim)
        throw UnsupportedError("grid sets are limited to dimension 4");
    require(static_cast<int>(s.size()) == dim, "grid shape has wrong length");
    require(c > 0 && std::isfinite(c), "grid cell must be positive");
    require(o.is_finite(), "grid origin must be finite");
    double total = 1;
    for (int k = 0; k < dim; ++k)
    {
        require(s[k] >= 1, "grid shape components must be >= 1");
        shape[k] = s[k];
        total *= static_cast<double>(s[k]);
    }
    if (total > static_cast<double>(kMaxCells))
        throw UnsupportedError("grid exceeds the 2^32 cell cap");
}

GridFrame GridFrame::symmetric(int dim, double half, double cell)
{
    require(half > 0 && cell > 0, "symmetric frame needs positive extent");
    int64_t k = static_cast<int64_t>(std::ceil(half / cell - 1e-9));
    k = std::max<int64_t>(k, 1);
    Vector o(dim);
    std::array<int64_t, kMaxSetDim> s{};
    for (int i = 0; i < dim; ++i)
    {
        o[i] = -static_cast<double>(k) * cell;
        s[i] = 2 * k;
    }
    return GridFrame(o, cell, std::span<const int64_t>(s.data(), dim));
}

GridFrame GridFrame::covering(const Vector& lo, const Vector& hi, double cell)
{
    require(lo.dim() == hi.dim(), "frame corner dimension mismatch");
    const int dim = lo.dim();
    Vector o(dim);
    std::array<int64_t, kMaxSetDim> s{};
    for (int i = 0; i < dim; ++i)
    {
        int64_t a = static_cast<int64_t>(std::floor(lo[i] / cell));
        int64_t b = static_cast<int64_t>(std::ceil(hi[i] / cell));
        o[i] = static_cast<double>(a) * cell;
        s[i] = std::max<int64_t>(1, b - a);
    }
    return GridFrame(o, cell, std::span<const int64_t>(s.data(), dim));
}

int64_t GridFrame::cell_count() const
{
    int64_t n = 1;
    for (int k = 0; k < dim; ++k)
        n *= shape[k];
    return n;
}

double GridFrame::cell_volume() const
{
    return std::pow(cell, dim);
}

void GridFrame::unravel(int64_t linear, int64_t* idx) const
{
    for (int k = 0; k < dim; ++k)
    {
        idx[k] = linear % shape[k];
        linear /= shape[k];
    }
}

int64_t GridFrame::ravel(const int64_t* idx) const
{
    int64_t lin = 0;
    for (int k = dim - 1; k >= 0; --k)
        lin = lin * shape[k] + idx[k];
    return lin;
}

Vector GridFrame::center(const int64_t* idx) const
{
    Vector c(dim);
    for (int k = 0; k < dim; ++k)
        c[k] = origin[k] + (static_cast<double>(idx[k]) + 0.5) * cell;
    return c;
}

Vector GridFrame::center(int64_t linear) const
{
    int64_t idx[kMaxSetDim];
    unravel(linear, idx);
    return center(idx);
}

Vector GridFrame::upper() const
{
    Vector u(dim);
    for (int k = 0; k < dim; ++k)
        u[k] = origin[k] + static_cast<double>(shape[k]) * cell;
    return u;
}

int64_t GridFrame::locate(const Vector& x) const
{
    if (x.dim() != dim)
        throw PreconditionError("point dimension does not match grid");
    int64_t idx[kMaxSetDim];
    for (int k = 0; k < dim; ++k)
    {
        double t = std::floor((x[k] - origin[k]) / cell);
        if (!(t >= 0) || t >= static_cast<double>(shape[k]))
            return -1;
        idx[k] = static_cast<int64_t>(t);
    }
    return ravel(idx);
}

bool GridFrame::same_as(const GridFrame& o) const
{
    if (dim != o.dim || std::abs(cell - o.cell) > 1e-12 * cell)
        return false;
    for (int k = 0; k < dim; ++k)
        if (shape[k] != o.shape[k] || std::abs(origin[k] - o.origin[k]) > 1e-9 * cell)
            return false;
    return true;
}

bool GridFrame::aligned_with(const GridFrame& o) const
{
    if (dim != o.dim || std::abs(cell - o.cell) > 1e-12 * cell)
        return false;
    for (int k = 0; k < dim; ++k)
    {
        double q = (origin[k] - o.origin[k]) / cell;
        if (std::abs(q - std::round(q)) > 1e-6)
            return false;
    }
    return true;
}

GridSet::GridSet(GridFrame frame) : frame_(std::move(frame)), words_(empty_words(frame_)) {}

GridSet::GridSet(GridFrame frame, std::vector<uint64_t> words) : frame_(std::move(frame)), words_(std::move(words))
{
    require(words_.size() == empty_words(frame_).size(), "occupancy length does not match grid shape");
    int64_t n = frame_.cell_count();
    if (n % 64 != 0)
        words_.back() &= (uint64_t{1} << (n % 64)) - 1;
}

GridSet GridSet::from_predicate(const GridFrame& frame, const std::function<bool(const Vector&)>& inside)
{
    std::vector<uint64_t> w = empty_words(frame);
    const int64_t n = frame.cell_count();
    for (int64_t i = 0; i < n; ++i)
        if (inside(frame.center(i)))
            set_bit(w, i);
    return GridSet(frame, std::move(w));
}

int64_t GridSet::count() const
{
    int64_t c = 0;
    for (uint64_t w : words_)
        c += std::popcount(w);
    return c;
}

std::vector<int64_t> GridSet::occupied() const
{
    std::vector<int64_t> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each_occupied([&](int64_t i) { out.push_back(i); });
    return out;
}

bool GridSet::contains(const Vector& x) const
{
    int64_t i = frame_.locate(x);
    return i >= 0 && test(i);
}

Vector GridSet::occupied_centroid() const
{
    Vector c(dim());
    int64_t n = 0;
    for_each_occupied([&](int64_t i) {
        c += frame_.center(i);
        ++n;
    });
    if (n == 0)
        throw DegenerateError("centroid of an empty grid set");
    return c * (1.0 / static_cast<double>(n));
}

double GridSet::max_center_norm() const
{
    double best = 0;
    for_each_occupied([&](int64_t i) { best = std::max(best, norm2(frame_.center(i))); });
    return std::sqrt(best);
}

GridSet rasterize(const Polytope& p, const GridFrame& frame)
{
    require(p.dim() == frame.dim, "rasterize: dimension mismatch");
    const HullData& h = p.hull();
    if (h.affine_dim < h.dim)
        return GridSet(frame);
    const double tol = 1e-12 * std::max(h.scale, 1.0);
    // per-facet test along the fastest axis keeps the inner loop cheap
    return GridSet::from_predicate(frame, [&](const Vector& x) {
        for (const Facet& f : h.facets)
            if (dot(f.normal, x) - f.offset > tol)
                return false;
        return true;
    });
}

GridSet rasterize(const Shell& s, const GridFrame& frame)
{
    require(s.dim() == frame.dim, "rasterize: dimension mismatch");
    return GridSet::from_predicate(frame, [&](const Vector& x) { return s.contains(x); });
}

GridSet rasterize(const Ball& b, const GridFrame& frame)
{
    return rasterize(Shell{b.center, 0.0, b.radius}, frame);
}

GridSet resample(const GridSet& src, const GridFrame& dst)
{
    require(src.dim() == dst.dim, "resample: dimension mismatch");
    return GridSet::from_predicate(dst, [&](const Vector& x) { return src.contains(x); });
}

GridSet transform_grid(const GridSet& src, const Matrix& m, const Vector& shift, const GridFrame& dst)
{
    require(m.rows() == src.dim() && m.cols() == src.dim(), "transform_grid: dimension mismatch");
    Eigen::FullPivLU<Matrix> lu(m);
    if (!lu.isInvertible())
        throw PreconditionError("transform_grid: singular map");
    Matrix inv = lu.inverse();
    return GridSet::from_predicate(dst, [&](const Vector& x) { return src.contains(apply(inv, x - shift)); });
}

GridFrame image_frame(const GridSet& src, const Matrix& m, const Vector& shift, double cell)
{
    const GridFrame& f = src.frame();
    const int d = f.dim;
    int64_t lo[kMaxSetDim], hi[kMaxSetDim];
    for (int k = 0; k < d; ++k)
    {
        lo[k] = std::numeric_limits<int64_t>::max();
        hi[k] = -1;
    }
    int64_t idx[kMaxSetDim];
    src.for_each_occupied([&](int64_t i) {
        f.unravel(i, idx);
        for (int k = 0; k < d; ++k)
        {
            lo[k] = std::min(lo[k], idx[k]);
            hi[k] = std::max(hi[k], idx[k]);
        }
    });
    if (hi[0] < 0)
        throw DegenerateError("image_frame: empty grid set");
    Vector blo(d), bhi(d);
    for (int k = 0; k < d; ++k)
    {
        blo[k] = std::numeric_limits<double>::infinity();
        bhi[k] = -std::numeric_limits<double>::infinity();
    }
    for (int mask = 0; mask < (1 << d); ++mask)
    {
        Vector c(d);
        for (int k = 0; k < d; ++k)
            c[k] = f.origin[k] + static_cast<double>((mask >> k & 1) ? hi[k] + 1 : lo[k]) * f.cell;
        Vector y = apply(m, c) + shift;
        for (int k = 0; k < d; ++k)
        {
            blo[k] = std::min(blo[k], y[k] - cell);
            bhi[k] = std::max(bhi[k], y[k] + cell);
        }
    }
    return GridFrame::covering(blo, bhi, cell);
}

}  // namespace symineq
