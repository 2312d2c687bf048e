#pragma once

#include "symineq/geomcore/vector.hpp"

namespace symineq
{
// v_n = pi^{n/2} / Gamma(n/2 + 1), 1 <= n <= 16.
double unit_ball_volume(int n);

struct Ball
{
    Vector center;
    double radius = 0;

    int dim() const { return center.dim(); }
    double volume() const;
    bool contains(const Vector& x) const { return norm2(x - center) <= radius * radius; }
};

// Origin-centred closed shell {inner <= |x - center| <= outer}; inner = 0 gives a ball.
struct Shell
{
    Vector center;
    double inner = 0;
    double outer = 0;

    int dim() const { return center.dim(); }
    double volume() const;
    bool contains(const Vector& x) const;
};

// Image of the closed unit ball under x -> center + axes·x.
class Ellipsoid
{
  public:
    Ellipsoid(Vector center, Matrix axes);
    static Ellipsoid from_ball(const Ball& b);

    int dim() const { return center_.dim(); }
    const Vector& center() const { return center_; }
    const Matrix& axes() const { return axes_; }
    double volume() const;
    // Shape matrix axes·axesᵀ; x is inside iff (x-c)ᵀ shape⁻¹ (x-c) <= 1.
    Matrix shape() const { return axes_ * axes_.transpose(); }
    double gauge(const Vector& x) const;
    double support(const Vector& u) const;
    Ellipsoid scaled_about_center(double s) const;
    // x -> m·x applied to the body; axes returned in symmetric (canonical) form.
    Ellipsoid transformed(const Matrix& m) const;
    Ellipsoid canonical() const;

  private:
    Vector center_;
    Matrix axes_;
};

struct EllipsoidPair
{
    Ellipsoid outer;
    Ellipsoid inner;
};

}  // namespace symineq
