#pragma once

#include <vector>

#include "symineq/geomcore/region.hpp"

namespace symineq
{
struct Piece
{
    Region region;
    double value = 0;
};

// Nonnegative function taking `value` on each (pairwise disjoint) region and 0 elsewhere.
class StepFunction
{
  public:
    StepFunction(int dim, std::vector<Piece> pieces);
    static StepFunction indicator(Region r, double value = 1.0);

    int dim() const { return dim_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    double operator()(const Vector& x) const;
    // |{f > t}|
    double level_volume(double t) const;
    // Distinct values, descending.
    std::vector<double> levels() const;
    double integral() const;
    double max_value() const;
    StepFunction scaled(double c) const;
    void bounds(Vector& lo, Vector& hi) const;

  private:
    int dim_ = 0;
    std::vector<Piece> pieces_;
};

// Symmetric decreasing rearrangement by layer cake: the superlevel set of each
// distinct value becomes an origin ball of the same volume and the pieces become
// nested shells.
StepFunction rearrange_function(const StepFunction& f);

// True when every piece is an origin-centred shell and values do not increase outwards.
bool is_radial_nonincreasing(const StepFunction& f);

}  // namespace symineq
