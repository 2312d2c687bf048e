#include "symineq/matinq/matrix_set.hpp"

#include <cmath>

#include "symineq/geomcore/error.hpp"
#include "symineq/geomcore/linalg.hpp"
#include "symineq/matinq/lp.hpp"

namespace symineq
{
Vector flatten(const Matrix& m)
{
    const int n = static_cast<int>(m.rows());
    require(m.cols() == n && n * n <= kMaxVectorDim, "flatten: square matrix of side <= 4 expected");
    Vector x(n * n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r)
            x[flat_index(n, r, c)] = m(r, c);
    return x;
}

Matrix unflatten(const Vector& x, int n)
{
    require(x.dim() == n * n, "unflatten: dimension mismatch");
    Matrix m(n, n);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r)
            m(r, c) = x[flat_index(n, r, c)];
    return m;
}

double flat_det(const Vector& x, int n)
{
    if (n == 2)
        return x[0] * x[3] - x[2] * x[1];
    if (n == 3)
        return x[0] * (x[4] * x[8] - x[7] * x[5]) - x[3] * (x[1] * x[8] - x[7] * x[2])
               + x[6] * (x[1] * x[5] - x[4] * x[2]);
    double a[16];
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            a[r * n + c] = x[flat_index(n, r, c)];
    return det_small(a, n);
}

Vector flat_det_gradient(const Vector& x, int n)
{
    Vector g(n * n);
    if (n == 2)
    {
        // det = x0 x3 − x2 x1
        g[0] = x[3];
        g[1] = -x[2];
        g[2] = -x[1];
        g[3] = x[0];
        return g;
    }
    Matrix m = unflatten(x, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
        {
            double a[16];
            int k = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != r && j != c)
                        a[k++] = m(i, j);
            double minor = det_small(a, n - 1);
            g[flat_index(n, r, c)] = ((r + c) % 2 == 0 ? 1.0 : -1.0) * minor;
        }
    return g;
}

MatrixSet::MatrixSet(int n, MatrixRep rep) : n_(n), rep_(std::move(rep))
{
    if (n != 2 && n != 3)
        throw UnsupportedError("matrix sets are limited to 2x2 and 3x3 matrices");
    const int d = std::visit([](const auto& r) { return r.dim(); }, rep_);
    require(d == n * n, "matrix set: ambient dimension must be n^2");
    if (is_grid() && n != 2)
        throw UnsupportedError("grid matrix sets need n = 2");
    if (const auto* p = std::get_if<Polytope>(&rep_))
        require(p->size() >= 1, "matrix set: polytope without vertices");
}

MatrixSet MatrixSet::ball(int n, double r)
{
    return MatrixSet(n, Ellipsoid::from_ball(Ball{Vector(n * n), r}));
}

MatrixSet MatrixSet::ball(const Matrix& center, double r)
{
    return MatrixSet(static_cast<int>(center.rows()), Ellipsoid::from_ball(Ball{flatten(center), r}));
}

MatrixSet MatrixSet::singleton(const Matrix& a)
{
    return MatrixSet(static_cast<int>(a.rows()), Polytope::from_extreme_points({flatten(a)}));
}

MatrixSet MatrixSet::polytope(int n, std::vector<Matrix> vertices)
{
    std::vector<Vector> pts;
    for (const Matrix& m : vertices)
        pts.push_back(flatten(m));
    if (n * n <= kMaxSetDim)
        return MatrixSet(n, Polytope::hull_of(pts));
    return MatrixSet(n, Polytope::from_extreme_points(std::move(pts)));
}

bool MatrixSet::empty() const
{
    if (const auto* g = std::get_if<GridSet>(&rep_))
        return g->empty();
    return false;
}

double MatrixSet::volume() const
{
    if (const auto* p = std::get_if<Polytope>(&rep_))
    {
        if (p->size() <= static_cast<std::size_t>(dim()))
            return 0.0;
        if (dim() > kMaxSetDim)
            throw UnsupportedError("volume of a 3x3 matrix polytope is not supported");
        return p->volume();
    }
    if (const auto* g = std::get_if<GridSet>(&rep_))
        return g->volume();
    return std::get<Ellipsoid>(rep_).volume();
}

bool MatrixSet::contains(const Vector& x, double tol) const
{
    require(x.dim() == dim(), "matrix set: point dimension mismatch");
    if (const auto* p = std::get_if<Polytope>(&rep_))
    {
        if (dim() <= kMaxSetDim && p->size() > static_cast<std::size_t>(dim()))
            return p->contains(x, tol);
        Eigen::MatrixXd pts(dim(), p->size());
        for (std::size_t j = 0; j < p->size(); ++j)
            for (int k = 0; k < dim(); ++k)
                pts(k, static_cast<Eigen::Index>(j)) = p->vertex(j)[k];
        Eigen::VectorXd v(dim());
        for (int k = 0; k < dim(); ++k)
            v[k] = x[k];
        return convex_weights(pts, v, tol).size() > 0;
    }
    if (const auto* g = std::get_if<GridSet>(&rep_))
        return g->contains(x);
    return std::get<Ellipsoid>(rep_).gauge(x) <= 1 + tol;
}

MatrixSet MatrixSet::scaled(double s) const
{
    require(std::isfinite(s) && s != 0, "matrix set: scale must be finite and nonzero");
    if (const auto* g = std::get_if<GridSet>(&rep_); g && s > 0)
    {
        // exact: the lattice scales with the set
        const GridFrame& f = g->frame();
        GridFrame h(f.origin * s, f.cell * s, std::span<const int64_t>(f.shape.data(), f.dim));
        return MatrixSet(n_, GridSet(h, g->words()));
    }
    return premultiplied(Matrix::Identity(n_, n_) * s, 0);
}

namespace
{
// T acting on every column of the flattened matrix.
Matrix column_action(const Matrix& t, int n)
{
    Matrix k = Matrix::Zero(n * n, n * n);
    for (int c = 0; c < n; ++c)
        k.block(c * n, c * n, n, n) = t;
    return k;
}
}  // namespace

MatrixSet MatrixSet::premultiplied(const Matrix& t, double cell) const
{
    require(t.rows() == n_ && t.cols() == n_, "premultiply: T must be n x n");
    if (!(std::abs(t.determinant()) > 1e-12))
        throw PreconditionError("premultiply: T is singular");
    Matrix k = column_action(t, n_);
    if (const auto* p = std::get_if<Polytope>(&rep_))
        return MatrixSet(n_, p->transformed(k));
    if (const auto* g = std::get_if<GridSet>(&rep_))
    {
        double c = cell > 0 ? cell : g->frame().cell;
        GridFrame f = image_frame(*g, k, Vector(dim()), c);
        return MatrixSet(n_, transform_grid(*g, k, Vector(dim()), f));
    }
    const Ellipsoid& e = std::get<Ellipsoid>(rep_);
    return MatrixSet(n_, Ellipsoid(apply(k, e.center()), k * e.axes()));
}

MatrixSet MatrixSet::with_origin() const
{
    const auto* p = std::get_if<Polytope>(&rep_);
    if (!p)
        throw UnsupportedError("co{0, E} is only formed for polytopes");
    std::vector<Vector> pts = p->vertices();
    pts.push_back(Vector(dim()));
    if (dim() <= kMaxSetDim)
        return MatrixSet(n_, Polytope::hull_of(pts));
    return MatrixSet(n_, Polytope::from_extreme_points(std::move(pts)));
}

MatrixSampler::MatrixSampler(const MatrixSet& e) : set_(&e)
{
    if (const auto* p = std::get_if<Polytope>(&e.rep()))
    {
        if (e.dim() > kMaxSetDim)
            throw UnsupportedError("sampling a 3x3 matrix polytope is not supported");
        region_.push_back(RegionSampler::of(*p));
        lanes_ = region_.back().lanes();
    }
    else if (const auto* g = std::get_if<GridSet>(&e.rep()))
    {
        region_.push_back(RegionSampler::of(*g));
        lanes_ = region_.back().lanes();
    }
    else
    {
        region_.push_back(RegionSampler::of(Shell{Vector(e.dim()), 0.0, 1.0}));
        lanes_ = region_.back().lanes();
    }
}

Vector MatrixSampler::sample(const CounterRng& rng, uint64_t index, uint32_t lane) const
{
    Vector x = region_.front().sample(rng, index, lane);
    if (const auto* e = std::get_if<Ellipsoid>(&set_->rep()))
        return e->center() + apply(e->axes(), x);
    return x;
}

Json to_json(const MatrixSet& e)
{
    Json set = std::visit([](const auto& r) { return to_json(r); }, e.rep());
    return {{"schema", kSchema}, {"type", "matrix_set"}, {"n", e.n()}, {"set", set}};
}

MatrixSet matrix_set_from_json(const Json& j)
{
    const Json* body = &j;
    int n = 0;
    if (j.is_object() && j.value("type", std::string()) == "matrix_set")
    {
        if (!j.contains("set"))
            throw FormatError("matrix_set: missing 'set'");
        body = &j.at("set");
        n = j.value("n", 0);
    }
    const std::string type = body->is_object() ? body->value("type", std::string()) : std::string();
    MatrixRep rep = [&]() -> MatrixRep {
        if (type == "ellipsoid")
            return ellipsoid_from_json(*body);
        if (type == "ball" || type == "shell")
        {
            Shell s = shell_from_json(*body);
            if (s.inner != 0)
                throw FormatError("matrix_set: shells with a hole are not matrix sets");
            return Ellipsoid::from_ball(Ball{s.center, s.outer});
        }
        if (type == "gridset")
            return gridset_from_json(*body);
        return polytope_from_json(*body);
    }();
    const int d = std::visit([](const auto& r) { return r.dim(); }, rep);
    if (n == 0)
        n = d == 4 ? 2 : d == 9 ? 3 : 0;
    if (n == 0)
        throw FormatError("matrix_set: dimension must be 4 or 9");
    return MatrixSet(n, std::move(rep));
}

}  // namespace symineq
