#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace symineq
{
inline constexpr int kMaxVectorDim = 16;
// Set geometry (hulls, grids, symmetrisation) is capped at this dimension.
inline constexpr int kMaxSetDim = 4;

class Vector
{
  public:
    Vector() = default;
    explicit Vector(int n);
    Vector(std::initializer_list<double> coords);
    explicit Vector(std::span<const double> coords);

    static Vector zero(int n) { return Vector(n); }
    static Vector unit(int n, int axis);
    static Vector from_eigen(const Eigen::VectorXd& v);

    int dim() const { return n_; }
    double operator[](int i) const { return c_[i]; }
    double& operator[](int i) { return c_[i]; }
    const double* data() const { return c_.data(); }
    double* data() { return c_.data(); }
    std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(n_)}; }

    Eigen::VectorXd to_eigen() const;
    bool is_finite() const;

    Vector& operator+=(const Vector& o);
    Vector& operator-=(const Vector& o);
    Vector& operator*=(double s);

    friend Vector operator+(Vector a, const Vector& b) { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
    friend Vector operator*(Vector a, double s) { return a *= s; }
    friend Vector operator*(double s, Vector a) { return a *= s; }
    friend Vector operator-(Vector a) { return a *= -1.0; }
    friend bool operator==(const Vector& a, const Vector& b);

  private:
    std::array<double, kMaxVectorDim> c_{};
    int n_ = 0;
};

double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);
double norm2(const Vector& a);
double distance(const Vector& a, const Vector& b);

// Unit vector; construction checks the norm within 1e-12.
class Direction
{
  public:
    explicit Direction(const Vector& v);
    static Direction normalized(const Vector& v);
    static Direction axis(int n, int axis) { return Direction(Vector::unit(n, axis)); }
    static Direction angle(double theta) { return Direction::normalized({std::cos(theta), std::sin(theta)}); }

    const Vector& vector() const { return v_; }
    int dim() const { return v_.dim(); }
    double operator[](int i) const { return v_[i]; }

  private:
    Vector v_;
};

using Matrix = Eigen::MatrixXd;

// Orthogonal matrix with determinant +1.
class Rotation
{
  public:
    explicit Rotation(const Matrix& m);
    static Rotation identity(int n) { return Rotation(Matrix::Identity(n, n)); }
    static Rotation planar(double theta);

    const Matrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    Vector apply(const Vector& v) const;
    Rotation inverse() const { return Rotation(m_.transpose()); }

  private:
    Matrix m_;
};

Vector apply(const Matrix& m, const Vector& v);

}  // namespace symineq
