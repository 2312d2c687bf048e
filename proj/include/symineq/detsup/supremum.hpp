#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "symineq/detsup/determinant.hpp"
#include "symineq/geomcore/region.hpp"
#include "symineq/geomcore/serialize.hpp"

namespace symineq
{
enum class SupMethod { ExhaustiveVertices, MultistartLocal };
std::string method_name(SupMethod m);

struct DetSupResult
{
    double value = 0;
    std::vector<Vector> argmax;
    SupMethod method = SupMethod::ExhaustiveVertices;
    // true iff the value is the exact supremum over the given polytopes
    bool certificate = false;
    // The true supremum over the input sets is at most value·(1 + slack). Zero for
    // polytopes; shells are searched through an inscribed polytope (then refined over
    // the ball itself) and carry the inscription gap here.
    double slack = 0;
    uint64_t evaluations = 0;
};

struct SupOptions
{
    uint64_t seed = 0;
    int restarts = 64;
    // Largest number of vertex tuples scanned before switching to multistart ascent.
    uint64_t exhaustive_budget = 200'000'000;
    // Vertex counts used when a shell (ball) has to be discretized.
    int ball_vertices_2d = 256;
    int ball_vertices_3d = 500;
    int ball_vertices_4d = 600;
};

// Finite point set whose convex hull carries the supremum of any functional convex in
// each argument: polytope vertices, hull vertices of occupied cell centres, or the
// vertices of an inscribed polytope for an origin shell. `slack` receives 1/rho − 1,
// rho the inradius ratio of that polytope (0 otherwise).
std::vector<Vector> extreme_candidates(const Region& e, const SupOptions& opt, double* slack = nullptr);

// sup det(0, y_1, …, y_n) over y_j ∈ E_j.
DetSupResult sup_det_origin(std::span<const Region> sets, const SupOptions& opt = {});
// sup det(y_1, …, y_{n+1}) over y_j ∈ E_j.
DetSupResult sup_det_simplex(std::span<const Region> sets, const SupOptions& opt = {});
// sup det(0, Σ a_i1 y_i, …, Σ a_in y_i) over y_i ∈ E_i.
DetSupResult sup_det_linear(std::span<const Region> sets, const CoefficientMatrix& a, const SupOptions& opt = {});

// One set repeated n (resp. n+1) times.
DetSupResult sup_det_origin(const Region& e, const SupOptions& opt = {});
DetSupResult sup_det_simplex(const Region& e, const SupOptions& opt = {});

// Closed forms on origin balls: Π r_j (orthogonal frame) and, for n+1 equal radii r,
// the regular simplex value r^n (n+1)^{(n+1)/2} / n^{n/2}.
double ball_origin_sup(std::span<const double> radii);
double ball_simplex_sup(int n, double r);

// Finite union of closed intervals on the line.
struct IntervalSet
{
    std::vector<std::pair<double, double>> pieces;

    double measure() const;  // overlaps are merged
    double lower() const;
    double upper() const;
};

// sup |Σ a_j x_j| over x_j ∈ E_j, and the same over the rearranged intervals
// E_j* = (−|E_j|/2, |E_j|/2), which equals Σ |a_j| |E_j| / 2.
double interval_sum_sup(std::span<const IntervalSet> sets, std::span<const double> a);
double interval_sum_sup_rearranged(std::span<const IntervalSet> sets, std::span<const double> a);

Json to_json(const DetSupResult& r);

}  // namespace symineq
