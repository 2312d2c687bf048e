#pragma once

#include "symineq/detsup/supremum.hpp"

namespace symineq
{
struct SharpConstants
{
    int n = 0;
    double A = 0;  // |E| <= A sup det(0, y_1, …, y_n)
    double B = 0;  // |E| <= B sup det(y_1, …, y_{n+1})
};

// Closed forms A_n = v_n and B_n = v_n n^{n/2} / (n+1)^{(n+1)/2}, 1 <= n <= 4.
SharpConstants sharp_constants(int n);

// Numeric cross-check: v_n / sup over the unit ball, searched from the vertices of an
// inscribed polytope P and refined over the sphere. `polytope` holds |P| / sup over P.
struct ConstantsCheck
{
    SharpConstants closed;
    SharpConstants numeric;
    SharpConstants polytope;
    DetSupResult origin;
    DetSupResult simplex;
    int ball_vertices = 0;
    double rel_err_A = 0;
    double rel_err_B = 0;
    bool relation_holds = false;  // B <= A <= (n+1) B on the closed forms
    bool pass = false;            // both within `tol`
};
ConstantsCheck verify_sharp_constants(int n, double tol = 0.01, const SupOptions& opt = {});

Json to_json(const SharpConstants& c);
Json to_json(const ConstantsCheck& c);

// |E| <= v_n sup|x|^n  and  |E| <= v_n 2^{-n} diam^n.
struct IsoReport
{
    double volume = 0;
    double bound = 0;
    double ratio = 0;  // volume / bound, 1 on balls
    bool pass = false;
};
IsoReport iso_radius_check(const Region& e);
IsoReport iso_diameter_check(const Region& e);

// With 0 in E: sup det(0, ·) <= sup det(·) <= (n+1) sup det(0, ·).
struct RelationReport
{
    DetSupResult origin;
    DetSupResult simplex;
    double lower_ratio = 0;  // simplex / origin, at least 1
    double upper_ratio = 0;  // simplex / ((n+1)·origin), at most 1
    bool pass = false;
};
RelationReport relation_check(const Polytope& e, const SupOptions& opt = {});

// Maximal simplex T in E with |E| <= n^n |T| and E inside −n(T−c)+c.
struct SimplexBoundReport
{
    double volume = 0;
    double simplex_volume = 0;
    double ratio = 0;  // |E| / |T|
    double bound = 0;  // n^n
    std::vector<Vector> simplex;
    bool contained = false;
    bool certificate = false;
    bool pass = false;
};
SimplexBoundReport simplex_bound_check(const Polytope& e, const SupOptions& opt = {});

// Largest simplex in E versus in a discretized E*, for m = n+1 vertices.
struct MacbeathReport
{
    DetSupResult original;
    DetSupResult rearranged;  // on the inscribed polytope of schwarz(E)
    double ball_closed_form = 0;
    double slack = 0;  // absolute: rearranged value times the inscription gap
    double gap = 0;    // rearranged − original
    bool pass = false;
};
MacbeathReport macbeath_check(const Polytope& e, int m, const SupOptions& opt = {});

}  // namespace symineq
