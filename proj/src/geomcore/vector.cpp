#include "symineq/geomcore/vector.hpp"

#include <string>

#include "symineq/geomcore/error.hpp"

namespace symineq
{
namespace
{
void check_dim(int n)
{
    if (n < 1 || n > kMaxVectorDim)
        throw PreconditionError("vector dimension " + std::to_string(n) + " outside [1, 16]");
}
}  // namespace

Vector::Vector(int n) : n_(n)
{
    check_dim(n);
}

Vector::Vector(std::initializer_list<double> coords) : n_(static_cast<int>(coords.size()))
{
    check_dim(n_);
    int i = 0;
    for (double x : coords)
        c_[i++] = x;
}

Vector::Vector(std::span<const double> coords) : n_(static_cast<int>(coords.size()))
{
    check_dim(n_);
    for (int i = 0; i < n_; ++i)
        c_[i] = coords[i];
}

Vector Vector::unit(int n, int axis)
{
    require(axis >= 0 && axis < n, "axis out of range");
    Vector v(n);
    v[axis] = 1.0;
    return v;
}

Vector Vector::from_eigen(const Eigen::VectorXd& v)
{
    Vector r(static_cast<int>(v.size()));
    for (int i = 0; i < r.n_; ++i)
        r[i] = v[i];
    return r;
}

Eigen::VectorXd Vector::to_eigen() const
{
    Eigen::VectorXd v(n_);
    for (int i = 0; i < n_; ++i)
        v[i] = c_[i];
    return v;
}

bool Vector::is_finite() const
{
    for (int i = 0; i < n_; ++i)
        if (!std::isfinite(c_[i]))
            return false;
    return true;
}

Vector& Vector::operator+=(const Vector& o)
{
    require(n_ == o.n_, "vector dimension mismatch");
    for (int i = 0; i < n_; ++i)
        c_[i] += o.c_[i];
    return *this;
}

Vector& Vector::operator-=(const Vector& o)
{
    require(n_ == o.n_, "vector dimension mismatch");
    for (int i = 0; i < n_; ++i)
        c_[i] -= o.c_[i];
    return *this;
}

Vector& Vector::operator*=(double s)
{
    for (int i = 0; i < n_; ++i)
        c_[i] *= s;
    return *this;
}

bool operator==(const Vector& a, const Vector& b)
{
    if (a.n_ != b.n_)
        return false;
    for (int i = 0; i < a.n_; ++i)
        if (a.c_[i] != b.c_[i])
            return false;
    return true;
}

double dot(const Vector& a, const Vector& b)
{
    require(a.dim() == b.dim(), "vector dimension mismatch");
    double s = 0;
    for (int i = 0; i < a.dim(); ++i)
        s += a[i] * b[i];
    return s;
}

double norm2(const Vector& a)
{
    return dot(a, a);
}

double norm(const Vector& a)
{
    return std::sqrt(norm2(a));
}

double distance(const Vector& a, const Vector& b)
{
    return norm(a - b);
}

Direction::Direction(const Vector& v) : v_(v)
{
    if (std::abs(norm(v) - 1.0) > 1e-12)
        throw PreconditionError("direction is not a unit vector");
}

Direction Direction::normalized(const Vector& v)
{
    double len = norm(v);
    if (!(len > 0) || !std::isfinite(len))
        throw PreconditionError("cannot normalize a zero or non-finite vector");
    Vector u = v * (1.0 / len);
    // one more pass pulls the norm to within an ulp or two of 1
    u *= 1.0 / norm(u);
    return Direction(u);
}

Rotation::Rotation(const Matrix& m) : m_(m)
{
    if (m.rows() != m.cols() || m.rows() < 1)
        throw PreconditionError("rotation must be square");
    Matrix g = m.transpose() * m - Matrix::Identity(m.rows(), m.cols());
    if (g.cwiseAbs().maxCoeff() > 1e-10)
        throw PreconditionError("rotation columns are not orthonormal");
    if (std::abs(m.determinant() - 1.0) > 1e-10)
        throw PreconditionError("rotation determinant is not +1");
}

Rotation Rotation::planar(double theta)
{
    Matrix m(2, 2);
    m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
    return Rotation(m);
}

Vector Rotation::apply(const Vector& v) const
{
    return symineq::apply(m_, v);
}

Vector apply(const Matrix& m, const Vector& v)
{
    require(m.cols() == v.dim(), "matrix/vector dimension mismatch");
    Vector r(static_cast<int>(m.rows()));
    for (int i = 0; i < m.rows(); ++i)
    {
        double s = 0;
        for (int j = 0; j < m.cols(); ++j)
            s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

}  // namespace symineq
