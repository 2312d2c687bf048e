#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "symineq/geomcore/gridset.hpp"
#include "symineq/geomcore/polytope.hpp"
#include "symineq/geomcore/region.hpp"

namespace symineq
{
// Origin-centred ball with the measured volume of the input.
Ball schwarz(const Region& e);
Ball schwarz(const GridSet& e);
Ball schwarz(const Polytope& e);

// Steiner symmetrisation of a grid set along a coordinate axis (0-based).
// Each axis line keeps its cell count as a run centred on x_axis = 0; a run of
// odd length puts its extra cell on the negative side. When the frame is not
// symmetric about 0 along `axis`, the result lives on a widened frame that is.
GridSet steiner_grid(const GridSet& e, int axis);

// Frame that shares the affected axis lattice with f but is symmetric about 0 along it.
GridFrame symmetric_along(const GridFrame& f, int axis);

// Discrete Steiner symmetrisation along an arbitrary direction on a fixed frame.
// Cell centres are binned into strips of width `cell` along an orthonormal basis
// of u-perp; inside a strip cells are ordered by |t| = |<c, u>| (negative t first
// on ties, then cell index). Symmetrising keeps, per strip, the first k cells
// where k is the strip's occupied count, so volume is preserved exactly.
class StripLayout
{
  public:
    // Cells outside the domain are never emitted; callers pick a domain known to
    // contain every symmetral they build (build() throws on overflow).
    struct Domain
    {
        double max_abs_t = std::numeric_limits<double>::infinity();
        double max_radius = std::numeric_limits<double>::infinity();
    };

    StripLayout(const GridFrame& frame, const Vector& u) : StripLayout(frame, u, Domain{}) {}
    StripLayout(const GridFrame& frame, const Vector& u, const Domain& domain);

    const GridFrame& frame() const { return frame_; }
    const Vector& direction() const { return u_; }
    int64_t bins() const { return static_cast<int64_t>(offset_.size()) - 1; }
    int64_t bin_of(int64_t cell) const;
    std::span<const int32_t> bin(int64_t b) const
    {
        return {order_.data() + offset_[b], static_cast<std::size_t>(offset_[b + 1] - offset_[b])};
    }
    int64_t bin_begin(int64_t b) const { return offset_[b]; }
    int32_t cell_at(int64_t pos) const { return order_[pos]; }

    // Per-strip occupied counts of e (must share the frame).
    void count(const GridSet& e, std::vector<int32_t>& counts) const;
    GridSet build(std::span<const int32_t> counts) const;
    GridSet apply(const GridSet& e) const;

  private:
    GridFrame frame_;
    Vector u_;
    std::vector<Vector> perp_;
    std::array<int64_t, kMaxSetDim> lo_{}, span_{};
    std::vector<int64_t> offset_;
    std::vector<int32_t> order_;
};

// Orthonormal basis of u-perp (for 2D: u rotated by +90 degrees).
std::vector<Vector> perp_basis(const Vector& u);

GridSet steiner_direction(const GridSet& e, const Vector& u);

// Exact Steiner symmetral of a planar convex polygon: the chord-length function
// over u-perp is piecewise linear with breaks at vertex projections, so the output
// vertices sit over those projections at t = ±chord/2.
Polytope steiner_polytope(const Polytope& k, const Vector& u);

// Chord length of a planar convex polygon along the line {s·w + t·u}.
double chord_length(const Polytope& k, const Vector& u, double s);

struct ConjugationReport
{
    double symdiff = 0;
    double bound = 0;
    double perimeter = 0;
    bool pass = false;
};

// Compares S_{rho e_t}(E) with rho S_{e_t}(rho^{-1} E) on E's frame (rotations by
// cell-centre resampling). The bound is 3 × staircase perimeter × cell.
ConjugationReport steiner_direction_conjugation_check(const GridSet& e, const Rotation& rho, int axis);

// Boundary length of the union of occupied cells (axis-parallel faces, 2D only).
double staircase_perimeter(const GridSet& e);

}  // namespace symineq
