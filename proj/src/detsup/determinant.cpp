#include "symineq/detsup/determinant.hpp"

#include "symineq/geomcore/error.hpp"
#include "symineq/geomcore/linalg.hpp"

namespace symineq
{
double simplex_det(std::span<const Vector> points)
{
    require(!points.empty(), "simplex_det: no points");
    const int n = points[0].dim();
    require(static_cast<int>(points.size()) == n + 1, "simplex_det: need n+1 points in R^n");
    require(n <= kMaxVectorDim, "simplex_det: dimension too large");
    const Vector& base = points[n];
    require(base.dim() == n, "simplex_det: dimension mismatch");
    double m[kMaxVectorDim * kMaxVectorDim];
    for (int j = 0; j < n; ++j)
    {
        require(points[j].dim() == n, "simplex_det: dimension mismatch");
        for (int r = 0; r < n; ++r)
            m[r * n + j] = points[j][r] - base[r];
    }
    return std::abs(det_small(m, n));
}

double origin_det(std::span<const Vector> points)
{
    require(!points.empty(), "origin_det: no points");
    const int n = points[0].dim();
    require(static_cast<int>(points.size()) == n, "origin_det: need n points in R^n");
    require(n <= kMaxVectorDim, "origin_det: dimension too large");
    double m[kMaxVectorDim * kMaxVectorDim];
    for (int j = 0; j < n; ++j)
    {
        require(points[j].dim() == n, "origin_det: dimension mismatch");
        for (int r = 0; r < n; ++r)
            m[r * n + j] = points[j][r];
    }
    return std::abs(det_small(m, n));
}

CoefficientMatrix::CoefficientMatrix(Matrix a) : a_(std::move(a))
{
    require(a_.cols() >= 1 && a_.rows() >= a_.cols(), "coefficient matrix needs l >= n >= 1");
    require(a_.allFinite(), "coefficient matrix entries must be finite");
}

CoefficientMatrix CoefficientMatrix::identity(int n)
{
    return CoefficientMatrix(Matrix::Identity(n, n));
}

CoefficientMatrix CoefficientMatrix::simplex(int n)
{
    Matrix a = Matrix::Zero(n + 1, n);
    for (int i = 0; i < n; ++i)
    {
        a(i, i) = 1;
        a(n, i) = -1;
    }
    return CoefficientMatrix(std::move(a));
}

double linear_det(std::span<const Vector> points, const CoefficientMatrix& a)
{
    const int l = a.rows(), n = a.cols();
    require(static_cast<int>(points.size()) == l, "linear_det: need one point per coefficient row");
    require(n <= kMaxVectorDim, "linear_det: dimension too large");
    double m[kMaxVectorDim * kMaxVectorDim] = {};
    for (int i = 0; i < l; ++i)
    {
        require(points[i].dim() == n, "linear_det: dimension mismatch");
        for (int k = 0; k < n; ++k)
        {
            const double w = a(i, k);
            if (w == 0)
                continue;
            for (int r = 0; r < n; ++r)
                m[r * n + k] += w * points[i][r];
        }
    }
    return std::abs(det_small(m, n));
}

}  // namespace symineq
