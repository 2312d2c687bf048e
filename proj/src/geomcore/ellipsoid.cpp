#include "symineq/geomcore/ellipsoid.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "symineq/geomcore/error.hpp"

namespace symineq
{
double unit_ball_volume(int n)
{
    if (n < 1 || n > kMaxVectorDim)
        throw PreconditionError("unit_ball_volume: dimension outside [1, 16]");
    return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double Ball::volume() const
{
    return unit_ball_volume(dim()) * std::pow(radius, dim());
}

double Shell::volume() const
{
    return unit_ball_volume(dim()) * (std::pow(outer, dim()) - std::pow(inner, dim()));
}

bool Shell::contains(const Vector& x) const
{
    double r2 = norm2(x - center);
    return r2 <= outer * outer && r2 >= inner * inner;
}

namespace
{
Matrix sym_sqrt(const Matrix& s)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}
}  // namespace

Ellipsoid::Ellipsoid(Vector center, Matrix axes) : center_(std::move(center)), axes_(std::move(axes))
{
    const int n = center_.dim();
    require(axes_.rows() == n && axes_.cols() == n, "ellipsoid axes must be n×n");
    require(center_.is_finite() && axes_.allFinite(), "ellipsoid must be finite");
    Eigen::JacobiSVD<Matrix> svd(axes_);
    const auto& s = svd.singularValues();
    if (!(s[n - 1] > 0) || s[0] / s[n - 1] >= 1e12)
        throw DegenerateError("ellipsoid axes are singular or ill-conditioned");
}

Ellipsoid Ellipsoid::from_ball(const Ball& b)
{
    const int n = b.dim();
    return Ellipsoid(b.center, Matrix::Identity(n, n) * b.radius);
}

double Ellipsoid::volume() const
{
    return unit_ball_volume(dim()) * std::abs(axes_.determinant());
}

double Ellipsoid::gauge(const Vector& x) const
{
    Eigen::VectorXd y = axes_.partialPivLu().solve((x - center_).to_eigen());
    return y.norm();
}

double Ellipsoid::support(const Vector& u) const
{
    return dot(center_, u) + (axes_.transpose() * u.to_eigen()).norm();
}

Ellipsoid Ellipsoid::scaled_about_center(double s) const
{
    return Ellipsoid(center_, axes_ * s);
}

Ellipsoid Ellipsoid::transformed(const Matrix& m) const
{
    require(m.rows() == dim() && m.cols() == dim(), "ellipsoid transform dimension mismatch");
    return Ellipsoid(apply(m, center_), m * axes_).canonical();
}

Ellipsoid Ellipsoid::canonical() const
{
    return Ellipsoid(center_, sym_sqrt(shape()));
}

EllipsoidPair loewner_john(const Polytope& body, const LoewnerOptions& opt)
{
    const HullData& h = body.hull();
    if (h.affine_dim < h.dim || !(h.volume > 0))
        throw DegenerateError("loewner_john: body has empty interior");
    const int d = body.dim();
    const int m = static_cast<int>(body.size());
    Matrix p(d, m);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < d; ++k)
            p(k, i) = body.vertex(i)[k];
    Matrix q(d + 1, m);
    q.topRows(d) = p;
    q.row(d).setOnes();

    Eigen::VectorXd u = Eigen::VectorXd::Constant(m, 1.0 / m);
    Eigen::VectorXd mval(m);
    const double dd = d + 1.0;
    for (int it = 0; it < opt.max_iterations; ++it)
    {
        Matrix x = q * u.asDiagonal() * q.transpose();
        Eigen::LLT<Matrix> llt(x);
        Matrix xq = llt.solve(q);
        for (int i = 0; i < m; ++i)
            mval[i] = q.col(i).dot(xq.col(i));
        int jmax = 0, jmin = -1;
        for (int i = 0; i < m; ++i)
        {
            if (mval[i] > mval[jmax])
                jmax = i;
            if (u[i] > 0 && (jmin < 0 || mval[i] < mval[jmin]))
                jmin = i;
        }
        double eps_plus = mval[jmax] / dd - 1.0;
        double eps_minus = 1.0 - mval[jmin] / dd;
        if (eps_plus <= opt.tolerance && eps_minus <= opt.tolerance)
            break;
        if (eps_plus > eps_minus)
        {
            double step = (mval[jmax] - dd) / (dd * (mval[jmax] - 1.0));
            u *= 1.0 - step;
            u[jmax] += step;
        }
        else
        {
            double step = (dd - mval[jmin]) / (dd * (mval[jmin] - 1.0));
            step = std::min(step, u[jmin] / (1.0 - u[jmin]));
            u *= 1.0 + step;
            u[jmin] -= step;
            if (u[jmin] < 1e-300)
                u[jmin] = 0;
        }
    }
    Eigen::VectorXd c = p * u;
    Matrix s = p * u.asDiagonal() * p.transpose() - c * c.transpose();
    // shape matrix of the enclosing ellipsoid is d·s; widen until every vertex is inside
    Matrix shape = s * static_cast<double>(d);
    Eigen::LLT<Matrix> llt(shape);
    double worst = 0;
    for (int i = 0; i < m; ++i)
    {
        Eigen::VectorXd r = p.col(i) - c;
        worst = std::max(worst, r.dot(llt.solve(r)));
    }
    if (worst > 1.0)
        shape *= worst;
    Ellipsoid outer(Vector::from_eigen(c), sym_sqrt(shape));
    Ellipsoid inner = outer.scaled_about_center(1.0 / d);
    double limit = inner_scale_limit(outer, body);
    if (limit * (1.0 + 1e-6) < 1.0 / d)
        throw std::logic_error("loewner_john: shrunk ellipsoid escapes the body");
    return {outer, inner};
}

double inner_scale_limit(const Ellipsoid& e, const Polytope& body)
{
    const HullData& h = body.hull();
    double best = std::numeric_limits<double>::infinity();
    for (const Facet& f : h.facets)
    {
        double slack = f.offset - dot(f.normal, e.center());
        double reach = (e.axes().transpose() * f.normal.to_eigen()).norm();
        best = std::min(best, slack / reach);
    }
    return best;
}

Polytope inscribed_box(const Ellipsoid& e)
{
    const int n = e.dim();
    Matrix s = e.shape();
    double scale = s.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && std::abs(s(i, j)) > 1e-9 * scale)
                throw PreconditionError("inscribed_box: ellipsoid is not axis-aligned");
    Vector lo(n), hi(n);
    for (int i = 0; i < n; ++i)
    {
        double l = std::sqrt(s(i, i));
        if (!(l > 0))
            throw DegenerateError("inscribed_box: zero semi-axis");
        double w = l / std::sqrt(static_cast<double>(n));
        lo[i] = e.center()[i] - w;
        hi[i] = e.center()[i] + w;
    }
    return box(lo, hi);
}

Rotation align_rotation(const Ellipsoid& e)
{
    Eigen::SelfAdjointEigenSolver<Matrix> es(e.shape());
    if (es.info() != Eigen::Success)
        throw DegenerateError("align_rotation: eigendecomposition failed");
    Matrix r = es.eigenvectors().transpose();
    if (r.determinant() < 0)
        r.row(0) *= -1.0;
    return Rotation(r);
}

}  // namespace symineq
