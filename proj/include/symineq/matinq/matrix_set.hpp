#pragma once

#include <variant>

#include "symineq/geomcore/ball.hpp"
#include "symineq/geomcore/gridset.hpp"
#include "symineq/geomcore/polytope.hpp"
#include "symineq/geomcore/sampling.hpp"
#include "symineq/geomcore/serialize.hpp"

namespace symineq
{
// n×n matrices live in ℝ^{n²} column by column: entry (r, c) is coordinate c·n + r,
// so the leading coordinates hold the leading columns.
inline int flat_index(int n, int r, int c)
{
    return c * n + r;
}
Vector flatten(const Matrix& m);
Matrix unflatten(const Vector& x, int n);
double flat_det(const Vector& x, int n);
// ∂det/∂x for the flattened matrix (the cofactor matrix, flattened).
Vector flat_det_gradient(const Vector& x, int n);

using MatrixRep = std::variant<Polytope, GridSet, Ellipsoid>;

class MatrixSet
{
  public:
    // n ∈ {2, 3}; grids need n = 2 (ℝ⁴ is the grid dimension cap).
    MatrixSet(int n, MatrixRep rep);
    static MatrixSet ball(int n, double r);
    static MatrixSet ball(const Matrix& center, double r);
    static MatrixSet singleton(const Matrix& a);
    static MatrixSet polytope(int n, std::vector<Matrix> vertices);

    int n() const { return n_; }
    int dim() const { return n_ * n_; }
    const MatrixRep& rep() const { return rep_; }
    bool is_polytope() const { return std::holds_alternative<Polytope>(rep_); }
    bool is_grid() const { return std::holds_alternative<GridSet>(rep_); }
    bool is_ellipsoid() const { return std::holds_alternative<Ellipsoid>(rep_); }
    bool empty() const;

    // Lebesgue measure in ℝ^{n²}; polytopes in ℝ⁹ are unsupported unless they are a point.
    double volume() const;
    bool contains(const Vector& x, double tol = 1e-9) const;
    bool contains(const Matrix& a, double tol = 1e-9) const { return contains(flatten(a), tol); }

    MatrixSet scaled(double s) const;
    // {T·A : A ∈ E}; grids are resampled onto a frame with the given cell (0 keeps the cell).
    MatrixSet premultiplied(const Matrix& t, double cell = 0) const;
    // co{0 ∪ E}; polytopes only.
    MatrixSet with_origin() const;

  private:
    int n_;
    MatrixRep rep_;
};

// Uniform points of a matrix set (polytopes need n = 2).
class MatrixSampler
{
  public:
    explicit MatrixSampler(const MatrixSet& e);
    Vector sample(const CounterRng& rng, uint64_t index, uint32_t lane = 0) const;
    uint32_t lanes() const { return lanes_; }

  private:
    const MatrixSet* set_;
    std::vector<RegionSampler> region_;
    uint32_t lanes_ = 0;
};

Json to_json(const MatrixSet& e);
// {"type": "matrix_set", "n": 2, "set": <polytope | gridset | ellipsoid | ball>}; a bare
// region with dimension 4 or 9 is accepted as well.
MatrixSet matrix_set_from_json(const Json& j);

}  // namespace symineq
