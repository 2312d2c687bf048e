#pragma once

#include <span>

#include "symineq/geomcore/vector.hpp"

namespace symineq
{
// det(y_1, …, y_{n+1}) = n!·vol co{y_j} = |det(y_1 − y_{n+1}, …, y_n − y_{n+1})|.
double simplex_det(std::span<const Vector> points);

// det(0, y_1, …, y_n) = |det of the matrix with columns y_j|.
double origin_det(std::span<const Vector> points);

// l×n real matrix A with l >= n; row i holds the weights (a_i1, …, a_in) of y_i.
class CoefficientMatrix
{
  public:
    explicit CoefficientMatrix(Matrix a);
    static CoefficientMatrix identity(int n);
    // Rows e_1, …, e_n and a final row of −1: reduces the linear form to simplex_det.
    static CoefficientMatrix simplex(int n);

    int rows() const { return static_cast<int>(a_.rows()); }
    int cols() const { return static_cast<int>(a_.cols()); }
    double operator()(int i, int k) const { return a_(i, k); }
    const Matrix& matrix() const { return a_; }

  private:
    Matrix a_;
};

// det(0, Σ_i a_i1 y_i, …, Σ_i a_in y_i) = |det(Y·A)| with Y = [y_1 … y_l].
double linear_det(std::span<const Vector> points, const CoefficientMatrix& a);

}  // namespace symineq
