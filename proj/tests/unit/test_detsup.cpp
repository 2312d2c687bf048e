#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "symineq/detsup/constants.hpp"
#include "symineq/detsup/sublevel.hpp"
#include "symineq/geomcore/discretize.hpp"
#include "symineq/geomcore/error.hpp"
#include "symineq/geomcore/linalg.hpp"
#include "symineq/rearrange/steiner.hpp"

using namespace symineq;
using testgen::Gen;

namespace
{
Polytope random_polytope(Gen& g, int d, int pts, double r = 1)
{
    for (;;)
    {
        Polytope p = convex_hull(g.cloud(d, pts, r));
        if (p.volume() > 1e-2 * std::pow(r, d))
            return p;
    }
}

Polytope random_polytope_shifted(Gen& g, int d, int pts)
{
    Vector c = g.in_box(d, -0.5, 0.5);
    std::vector<Vector> v = g.cloud(d, pts);
    for (Vector& x : v)
        x += c;
    return convex_hull(v);
}

// sup over every tuple of points, no hull reduction
double brute_linear(const std::vector<std::vector<Vector>>& c, const CoefficientMatrix& a)
{
    std::vector<std::size_t> idx(c.size(), 0);
    std::vector<Vector> y(c.size());
    double best = 0;
    for (;;)
    {
        for (std::size_t i = 0; i < c.size(); ++i)
            y[i] = c[i][idx[i]];
        best = std::max(best, linear_det(y, a));
        std::size_t k = 0;
        while (k < c.size() && ++idx[k] == c[k].size())
            idx[k++] = 0;
        if (k == c.size())
            return best;
    }
}

const double kSqrt3 = std::sqrt(3.0);
}  // namespace

TEST(Determinant, SimplexDetExamples)
{
    std::vector<Vector> t{{0, 0}, {1, 0}, {0, 1}};
    EXPECT_DOUBLE_EQ(simplex_det(t), 1.0);
    std::vector<Vector> c{{0, 0}, {1, 1}, {2, 2}};
    EXPECT_EQ(simplex_det(c), 0.0);
    Gen g(3);
    for (int d = 2; d <= 4; ++d)
        for (int k = 0; k < 20; ++k)
        {
            auto p = g.cloud(d, d + 1);
            EXPECT_NEAR(simplex_det(p), factorial(d) * hull_volume(p), 1e-12);
        }
    EXPECT_THROW(simplex_det(std::vector<Vector>{{0, 0}, {1, 0}}), PreconditionError);
    EXPECT_THROW(simplex_det(std::vector<Vector>{{0, 0}, {1, 0}, {0, 1, 0}}), PreconditionError);
}

TEST(Determinant, OriginDetExamples)
{
    EXPECT_EQ(origin_det(std::vector<Vector>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 1.0);
    EXPECT_EQ(origin_det(std::vector<Vector>{{0.3, 2}, {0.3, 2}}), 0.0);
    Gen g(4);
    for (int k = 0; k < 20; ++k)
    {
        Vector a = g.in_box(2, -2, 2), b = g.in_box(2, -2, 2);
        EXPECT_NEAR(origin_det(std::vector<Vector>{a, b}), std::abs(a[0] * b[1] - a[1] * b[0]), 1e-15);
    }
    EXPECT_THROW(origin_det(std::vector<Vector>{{1, 0}}), PreconditionError);
}

TEST(Determinant, LinearFormReductions)
{
    Gen g(5);
    for (int d = 1; d <= 4; ++d)
    {
        auto y = g.cloud(d, d + 1);
        std::vector<Vector> head(y.begin(), y.begin() + d);
        EXPECT_NEAR(linear_det(head, CoefficientMatrix::identity(d)), origin_det(head), 1e-14);
        EXPECT_NEAR(linear_det(y, CoefficientMatrix::simplex(d)), simplex_det(y), 1e-14);
    }
    EXPECT_THROW(CoefficientMatrix(Matrix::Ones(1, 2)), PreconditionError);
}

TEST(SupDetOrigin, UnitSquare)
{
    Region sq = box({0, 0}, {1, 1});
    DetSupResult r = sup_det_origin(sq);
    EXPECT_DOUBLE_EQ(r.value, 1.0);
    EXPECT_TRUE(r.certificate);
    EXPECT_EQ(r.method, SupMethod::ExhaustiveVertices);
    EXPECT_DOUBLE_EQ(origin_det(r.argmax), r.value);
    EXPECT_EQ(r.slack, 0.0);
}

TEST(SupDetOrigin, PolygonalBallGivesRadiusSquared)
{
    for (double r : {0.5, 1.0, 2.3})
    {
        DetSupResult s = sup_det_origin(Region(regular_polygon(256, r)));
        EXPECT_NEAR(s.value, r * r, 1e-12 * r * r);
    }
}

TEST(SupDetOrigin, PointAtOriginGivesZero)
{
    std::vector<Region> s{box({0, 0}, {1, 1}), Polytope::hull_of(std::vector<Vector>{{0, 0}})};
    EXPECT_EQ(sup_det_origin(s).value, 0.0);
}

TEST(SupDetOrigin, Errors)
{
    std::vector<Region> two{box({0, 0}, {1, 1})};
    EXPECT_THROW(sup_det_origin(two), PreconditionError);
    std::vector<Region> mixed{box({0, 0}, {1, 1}), box({0, 0, 0}, {1, 1, 1})};
    EXPECT_THROW(sup_det_origin(mixed), PreconditionError);
    GridSet empty(GridFrame::symmetric(2, 1.0, 0.25));
    EXPECT_THROW(sup_det_origin(Region(empty)), DegenerateError);
}

TEST(SupDetSimplex, UnitSquare)
{
    DetSupResult r = sup_det_simplex(Region(box({0, 0}, {1, 1})));
    EXPECT_DOUBLE_EQ(r.value, 1.0);
    EXPECT_TRUE(r.certificate);
    EXPECT_DOUBLE_EQ(simplex_det(r.argmax), r.value);
}

TEST(SupDetSimplex, PolygonalBallGivesEquilateralTriangle)
{
    const int k = 256;
    for (double r : {0.7, 1.0})
    {
        DetSupResult s = sup_det_simplex(Region(regular_polygon(k, r)));
        double exact = 1.5 * kSqrt3 * r * r;
        EXPECT_LE(s.value, exact * (1 + 1e-12));
        // every vertex lies within angle pi/k of an equilateral position
        EXPECT_GE(s.value, exact * std::pow(std::cos(std::numbers::pi / k), 2));
        EXPECT_NEAR(s.value, ball_simplex_sup(2, r), 1e-3 * exact);
    }
}

TEST(SupDetSimplex, SinglePointGivesZero)
{
    DetSupResult r = sup_det_simplex(Region(Polytope::hull_of(std::vector<Vector>{{0.4, -1.2}})));
    EXPECT_EQ(r.value, 0.0);
}

TEST(SupDetLinear, ReducesToOriginAndSimplex)
{
    Gen g(7);
    for (int t = 0; t < 10; ++t)
    {
        std::vector<Region> s3;
        for (int j = 0; j < 3; ++j)
            s3.push_back(random_polytope_shifted(g, 2, 6));
        std::vector<Region> s2(s3.begin(), s3.begin() + 2);
        EXPECT_NEAR(sup_det_linear(s2, CoefficientMatrix::identity(2)).value, sup_det_origin(s2).value, 1e-12);
        EXPECT_NEAR(sup_det_linear(s3, CoefficientMatrix::simplex(2)).value, sup_det_simplex(s3).value, 1e-12);
    }
    std::vector<Region> one{box({0, 0}, {1, 1})};
    EXPECT_THROW(sup_det_linear(one, CoefficientMatrix::identity(2)), PreconditionError);
}

TEST(SupDetLinear, MatchesBruteForceOverPointClouds)
{
    // sup over a cloud equals sup over its hull vertices
    Gen g(8);
    for (int t = 0; t < 10; ++t)
    {
        Matrix a(3, 2);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 2; ++k)
                a(i, k) = g.uniform(-2, 2);
        CoefficientMatrix cm(a);
        std::vector<std::vector<Vector>> clouds;
        std::vector<Region> sets;
        for (int j = 0; j < 3; ++j)
        {
            clouds.push_back(g.cloud(2, 12));
            sets.push_back(convex_hull(clouds.back()));
        }
        EXPECT_NEAR(sup_det_linear(sets, cm).value, brute_linear(clouds, cm), 1e-12);
    }
}

TEST(SupDetLinear, BallsDoNotExceedQuadrilaterals)
{
    Gen g(9);
    const int k = 64;
    for (int t = 0; t < 10; ++t)
    {
        Matrix a(3, 2);
        for (int i = 0; i < 3; ++i)
            for (int c = 0; c < 2; ++c)
                a(i, c) = g.uniform(-1, 1);
        CoefficientMatrix cm(a);
        std::vector<Region> e, balls;
        for (int j = 0; j < 3; ++j)
        {
            Polytope q = random_polytope_shifted(g, 2, 4);
            e.push_back(q);
            balls.push_back(regular_polygon(k, schwarz(q).radius));
        }
        double lhs = sup_det_linear(balls, cm).value;
        // inscribed 64-gons: the balls' value is at most lhs / cos^3(pi/k)
        EXPECT_LE(lhs / std::pow(std::cos(std::numbers::pi / k), 3), sup_det_linear(e, cm).value);
    }
}

TEST(SupDet, GLInvariance)
{
    Gen g(10);
    for (int d = 2; d <= 3; ++d)
        for (int t = 0; t < 8; ++t)
        {
            std::vector<Region> e, te;
            Matrix m = g.invertible(d);
            for (int j = 0; j < d; ++j)
            {
                Polytope p = random_polytope_shifted(g, d, 7);
                e.push_back(p);
                te.push_back(p.transformed(m));
            }
            double v = sup_det_origin(e).value;
            EXPECT_NEAR(sup_det_origin(te).value, std::abs(m.determinant()) * v, 1e-9 * v);
        }
}

TEST(SupDet, SimplexFormIsTranslationInvariant)
{
    Gen g(11);
    for (int d = 2; d <= 3; ++d)
        for (int t = 0; t < 8; ++t)
        {
            std::vector<Region> e, se;
            Vector shift = g.in_box(d, -3, 3);
            for (int j = 0; j <= d; ++j)
            {
                Polytope p = random_polytope(g, d, 6);
                e.push_back(p);
                se.push_back(p.translated(shift));
            }
            double v = sup_det_simplex(e).value;
            EXPECT_NEAR(sup_det_simplex(se).value, v, 1e-9 * v);
        }
}

TEST(SupDet, SandwichOnSetsContainingOrigin)
{
    Gen g(12);
    for (int d = 2; d <= 3; ++d)
        for (int t = 0; t < 20; ++t)
        {
            std::vector<Vector> pts = g.cloud(d, 8);
            pts.push_back(Vector(d) + g.in_ball(d, 0.05));
            Polytope p = convex_hull(pts);
            if (!p.contains(Vector(d), 1e-12))
                continue;
            RelationReport r = relation_check(p);
            EXPECT_TRUE(r.pass);
            EXPECT_GE(r.lower_ratio, 1 - 1e-12);
            EXPECT_LE(r.upper_ratio, 1 + 1e-12);
        }
    EXPECT_THROW(relation_check(box({1, 1}, {2, 2})), PreconditionError);
}

TEST(SupDet, ExhaustiveMatchesMultistartOnSmallInstances)
{
    Gen g(13);
    for (int t = 0; t < 10; ++t)
    {
        Polytope p = random_polytope(g, 3, 14);
        SupOptions ex, ms;
        ms.exhaustive_budget = 0;
        ms.seed = 99;
        DetSupResult a = sup_det_simplex(Region(p), ex), b = sup_det_simplex(Region(p), ms);
        EXPECT_EQ(a.method, SupMethod::ExhaustiveVertices);
        EXPECT_EQ(b.method, SupMethod::MultistartLocal);
        EXPECT_FALSE(b.certificate);
        EXPECT_LE(b.value, a.value * (1 + 1e-12));
        EXPECT_NEAR(b.value, a.value, 1e-9 * a.value);
        EXPECT_EQ(sup_det_simplex(Region(p), ms).value, b.value);
    }
}

TEST(SupDet, GridSetsGiveLowerBounds)
{
    GridFrame f = GridFrame::symmetric(2, 1.0, 1.0 / 32);
    GridSet disk = rasterize(Ball{{0, 0}, 0.8}, f);
    SupOptions o;
    o.seed = 5;
    DetSupResult r = sup_det_origin(Region(disk), o);
    EXPECT_EQ(r.method, SupMethod::MultistartLocal);
    EXPECT_FALSE(r.certificate);
    EXPECT_LE(r.value, 0.8 * 0.8);
    EXPECT_GE(r.value, 0.8 * 0.8 * 0.95);
    EXPECT_NEAR(origin_det(r.argmax), r.value, 1e-12 * r.value);
    for (const Vector& v : r.argmax)
        EXPECT_TRUE(disk.contains(v));
}

TEST(SupDet, ShellsCarrySlackAndRefineOnTheBall)
{
    Region b = Shell{Vector{0, 0, 0}, 0.0, 1.5};
    DetSupResult o = sup_det_origin(b);
    EXPECT_FALSE(o.certificate);
    EXPECT_GT(o.slack, 0.0);
    EXPECT_NEAR(o.value, std::pow(1.5, 3), 1e-12);
    DetSupResult s = sup_det_simplex(b);
    EXPECT_NEAR(s.value, ball_simplex_sup(3, 1.5), 1e-9);
    for (const Vector& v : s.argmax)
        EXPECT_LE(norm(v), 1.5 * (1 + 1e-12));
    EXPECT_THROW(sup_det_origin(Region(Shell{Vector{1, 0}, 0.0, 1.0})), PreconditionError);
}

TEST(SharpConstants, DimensionOne)
{
    SharpConstants c = sharp_constants(1);
    EXPECT_NEAR(c.A, 2.0, 1e-9);
    EXPECT_NEAR(c.B, 1.0, 1e-9);
    ConstantsCheck k = verify_sharp_constants(1);
    EXPECT_NEAR(k.numeric.A, 2.0, 1e-9);
    EXPECT_NEAR(k.numeric.B, 1.0, 1e-9);
    EXPECT_TRUE(k.pass);
}

TEST(SharpConstants, ClosedForms)
{
    SharpConstants c2 = sharp_constants(2), c3 = sharp_constants(3);
    EXPECT_NEAR(c2.A, std::numbers::pi, 1e-14);
    EXPECT_NEAR(c2.B, 2 * std::numbers::pi / (3 * kSqrt3), 1e-14);
    EXPECT_NEAR(c2.B, 1.20920, 1e-5);
    EXPECT_NEAR(c3.A, 4.18879, 1e-5);
    EXPECT_NEAR(c3.B, 1.36035, 1e-5);
    for (int n = 1; n <= 4; ++n)
    {
        SharpConstants c = sharp_constants(n);
        EXPECT_LE(c.B, c.A);
        EXPECT_LE(c.A, (n + 1) * c.B);
    }
    EXPECT_THROW(sharp_constants(0), PreconditionError);
    EXPECT_THROW(sharp_constants(5), PreconditionError);
}

TEST(SharpConstants, NumericSearchAgrees)
{
    for (int n = 2; n <= 3; ++n)
    {
        ConstantsCheck k = verify_sharp_constants(n);
        EXPECT_TRUE(k.pass);
        EXPECT_LE(k.rel_err_A, 0.01);
        EXPECT_LE(k.rel_err_B, 0.01);
        // the inscribed polytope alone is already close
        EXPECT_NEAR(k.polytope.A, k.closed.A, 0.02 * k.closed.A);
        EXPECT_NEAR(k.polytope.B, k.closed.B, 0.02 * k.closed.B);
    }
    // 256-gon alone, exhaustive: the equilateral triangle is found to O(1/k^2)
    ConstantsCheck k2 = verify_sharp_constants(2);
    EXPECT_NEAR(k2.polytope.B, 1.20920, 1e-3);
}

TEST(SharpInequalities, HoldOnRandomPolytopesAndBallsAreNearlyExtremal)
{
    Gen g(14);
    for (int n = 2; n <= 3; ++n)
    {
        SharpConstants c = sharp_constants(n);
        for (int t = 0; t < 20; ++t)
        {
            std::vector<Region> e;
            double prod_o = 1, prod_s = 1;
            for (int j = 0; j <= n; ++j)
            {
                Polytope p = random_polytope_shifted(g, n, 8);
                e.push_back(p);
                if (j < n)
                    prod_o *= std::pow(p.volume(), 1.0 / n);
                prod_s *= std::pow(p.volume(), 1.0 / (n + 1));
            }
            std::vector<Region> head(e.begin(), e.begin() + n);
            EXPECT_LE(prod_o, c.A * sup_det_origin(head).value * (1 + 1e-12));
            EXPECT_LE(prod_s, c.B * sup_det_simplex(e).value * (1 + 1e-12));
        }
        Polytope ball = discretized_ball(n, 1.0, n == 2 ? 256 : 500);
        double v = ball.volume();
        EXPECT_NEAR(v / (c.A * sup_det_origin(Region(ball)).value), 1.0, 0.02);
        EXPECT_NEAR(v / (c.B * sup_det_simplex(Region(ball)).value), 1.0, 0.02);
    }
}

TEST(Rearrangement, BallValuesDoNotExceedOriginals)
{
    Gen g(15);
    const int k = 256;
    const double slack = 1 / std::pow(std::cos(std::numbers::pi / k), 2);
    for (int t = 0; t < 20; ++t)
    {
        std::vector<Region> e, star;
        for (int j = 0; j < 3; ++j)
        {
            Polytope p = random_polytope_shifted(g, 2, 7);
            e.push_back(p);
            star.push_back(regular_polygon(k, schwarz(p).radius));
        }
        std::vector<Region> e2(e.begin(), e.begin() + 2), s2(star.begin(), star.begin() + 2);
        EXPECT_LE(sup_det_origin(s2).value * slack, sup_det_origin(e2).value);
        EXPECT_LE(sup_det_simplex(star).value * slack, sup_det_simplex(e).value);
    }
}

TEST(Rearrangement, SteinerInAnyDirectionDoesNotIncrease)
{
    Gen g(16);
    for (int t = 0; t < 20; ++t)
    {
        Matrix a(3, 2);
        for (int i = 0; i < 3; ++i)
            for (int c = 0; c < 2; ++c)
                a(i, c) = g.uniform(-1, 1);
        CoefficientMatrix cm(a);
        double th = g.uniform(0, std::numbers::pi);
        Vector u{std::cos(th), std::sin(th)};
        std::vector<Region> e, s;
        for (int j = 0; j < 3; ++j)
        {
            Polytope p = random_polytope_shifted(g, 2, 6);
            e.push_back(p);
            s.push_back(steiner_polytope(p, u));
        }
        EXPECT_LE(sup_det_linear(s, cm).value, sup_det_linear(e, cm).value * (1 + 1e-12));
    }
}

TEST(IntervalSums, ClosedFormMatchesEndpointSearch)
{
    Gen g(17);
    for (int t = 0; t < 50; ++t)
    {
        int l = g.integer(1, 5);
        std::vector<IntervalSet> e(l);
        std::vector<double> a(l);
        for (int j = 0; j < l; ++j)
        {
            int m = g.integer(1, 3);
            for (int q = 0; q < m; ++q)
            {
                double lo = g.uniform(-3, 3);
                e[j].pieces.push_back({lo, lo + g.uniform(0, 1.5)});
            }
            a[j] = g.uniform(-2, 2);
        }
        // brute force over all end points
        double best = 0;
        for (int mask = 0; mask < (1 << l); ++mask)
        {
            double s = 0;
            for (int j = 0; j < l; ++j)
                s += a[j] * ((mask >> j & 1) ? e[j].upper() : e[j].lower());
            best = std::max(best, std::abs(s));
        }
        EXPECT_NEAR(interval_sum_sup(e, a), best, 1e-12);
        EXPECT_LE(interval_sum_sup_rearranged(e, a), interval_sum_sup(e, a) + 1e-12);
    }
}

TEST(IntervalSums, MeasureMergesOverlaps)
{
    IntervalSet s{{{0, 1}, {0.5, 2}, {3, 3.25}}};
    EXPECT_DOUBLE_EQ(s.measure(), 2.25);
    std::vector<IntervalSet> one{s};
    std::vector<double> w{-2};
    EXPECT_DOUBLE_EQ(interval_sum_sup_rearranged(one, w), 2.25);
    EXPECT_DOUBLE_EQ(interval_sum_sup(one, w), 6.5);
}

TEST(IsoChecks, HoldAndBallsAreSharp)
{
    Gen g(18);
    for (int n = 2; n <= 3; ++n)
    {
        for (int t = 0; t < 30; ++t)
        {
            Polytope p = random_polytope_shifted(g, n, 10);
            EXPECT_TRUE(iso_radius_check(p).pass);
            EXPECT_TRUE(iso_diameter_check(p).pass);
        }
        Polytope b = discretized_ball(n, 1.0, n == 2 ? 256 : 500);
        EXPECT_GT(iso_radius_check(b).ratio, 0.98);
        EXPECT_GT(iso_diameter_check(b).ratio, 0.98);
    }
    GridSet disk = rasterize(Ball{{0, 0}, 0.7}, GridFrame::symmetric(2, 1.0, 1.0 / 64));
    EXPECT_TRUE(iso_radius_check(disk).pass);
    EXPECT_TRUE(iso_diameter_check(disk).pass);
    EXPECT_GT(iso_diameter_check(disk).ratio, 0.95);
}

TEST(SimplexBound, Examples)
{
    Polytope t = Polytope::hull_of(std::vector<Vector>{{0, 0}, {2, 0}, {0.5, 1.5}});
    SimplexBoundReport a = simplex_bound_check(t);
    EXPECT_NEAR(a.ratio, 1.0, 1e-12);
    EXPECT_TRUE(a.contained && a.pass);
    SimplexBoundReport s = simplex_bound_check(box({0, 0}, {1, 1}));
    EXPECT_NEAR(s.simplex_volume, 0.5, 1e-15);
    EXPECT_NEAR(s.ratio, 2.0, 1e-12);
    EXPECT_EQ(s.bound, 4.0);
    EXPECT_TRUE(s.pass && s.certificate);
    Polytope hex = regular_polygon(6, 1.0);
    hex = hex.scaled(1 / std::sqrt(hex.volume()));
    SimplexBoundReport h = simplex_bound_check(hex);
    EXPECT_NEAR(h.volume, 1.0, 1e-12);
    EXPECT_NEAR(h.ratio, 2.0, 1e-9);
    EXPECT_TRUE(h.pass);
    EXPECT_THROW(simplex_bound_check(Polytope::hull_of(std::vector<Vector>{{0, 0}, {1, 1}})), DegenerateError);
}

TEST(SimplexBound, RandomPolytopes)
{
    Gen g(19);
    for (int n = 2; n <= 3; ++n)
        for (int t = 0; t < 20; ++t)
        {
            SimplexBoundReport r = simplex_bound_check(random_polytope_shifted(g, n, 9));
            EXPECT_TRUE(r.pass) << r.ratio;
            EXPECT_LE(r.ratio, r.bound);
        }
}

TEST(Macbeath, Examples)
{
    MacbeathReport b = macbeath_check(regular_polygon(256, 1.0), 3);
    EXPECT_TRUE(b.pass);
    EXPECT_LE(std::abs(b.gap), b.slack + 1e-12);
    MacbeathReport s = macbeath_check(box({0, 0}, {1, 1}), 3);
    EXPECT_TRUE(s.pass);
    EXPECT_NEAR(s.ball_closed_form, 1.5 * kSqrt3 / std::numbers::pi, 1e-12);
    EXPECT_NEAR(s.rearranged.value, 0.8270, 1e-3);
    EXPECT_DOUBLE_EQ(s.original.value, 1.0);
    MacbeathReport r = macbeath_check(box({0, 0}, {4, 0.25}), 3);
    EXPECT_TRUE(r.pass);
    EXPECT_LT(r.rearranged.value, r.original.value);
    EXPECT_THROW(macbeath_check(box({0, 0}, {1, 1}), 4), PreconditionError);
}

TEST(Sublevel, FullAndEmptyLimits)
{
    std::vector<Region> sq{box({0, 0}, {1, 1}), box({0, 0}, {1, 1})};
    MCEstimate full = sublevel_measure(sq, Vector{0, 0}, 1.5, 20000, 1);
    EXPECT_DOUBLE_EQ(full.mean, 1.0);
    MCEstimate tiny = sublevel_measure(sq, Vector{0, 0}, 1e-7, 20000, 1);
    EXPECT_LT(tiny.mean, 1e-3);
    EXPECT_THROW(sublevel_measure(sq, Vector{0, 0}, 0.5, 0, 1), PreconditionError);
    EXPECT_THROW(sublevel_measure(sq, Vector{0, 0}, 0.5, 9999, 1), PreconditionError);
}

TEST(Sublevel, IndependentRunsAgree)
{
    std::vector<Region> sq{box({0, 0}, {1, 1}), box({0, 0}, {1, 1})};
    MCEstimate a = sublevel_measure(sq, Vector{0, 0}, 0.5, 100000, 3);
    MCEstimate b = sublevel_measure(sq, Vector{0, 0}, 0.5, 2000000, 4);
    EXPECT_LE(std::abs(a.mean - b.mean), 3 * std::hypot(a.stderr, b.stderr));
    EXPECT_LE(a.mean, 1.0);
    MCEstimate again = sublevel_measure(sq, Vector{0, 0}, 0.5, 100000, 3);
    EXPECT_EQ(a.mean, again.mean);
}

TEST(Gressman, DisksAreFixedAndSquaresLoseToDisks)
{
    std::vector<Region> disks{Shell{{0, 0}, 0.0, 0.6}, Shell{{0, 0}, 0.0, 0.5}};
    auto deltas = geometric_sweep(0.05, 0.8);
    EXPECT_EQ(deltas.size(), 10u);
    EXPECT_NEAR(deltas[8], 0.05 * 10, 1e-12);
    GressmanReport d = gressman_ratio(disks, Vector{0, 0}, deltas, 20000, 2);
    EXPECT_TRUE(d.pass);
    for (const auto& p : d.points)
        EXPECT_EQ(p.original.mean, p.rearranged.mean);
    EXPECT_TRUE(std::isfinite(d.max_ratio));

    std::vector<Region> sq{box({0, 0}, {1, 1}), box({-0.5, -0.5}, {0.5, 0.5})};
    GressmanReport s = gressman_ratio(sq, Vector{0, 0}, deltas, 50000, 3);
    EXPECT_TRUE(s.pass);
    // no blow-up as delta shrinks
    EXPECT_LT(s.max_ratio, 10.0);
    EXPECT_GT(s.points.front().ratio, 0.1);
}
