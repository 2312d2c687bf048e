#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "symineq/geomcore/discretize.hpp"
#include "symineq/geomcore/distance.hpp"
#include "symineq/geomcore/error.hpp"
#include "symineq/rearrange/export.hpp"
#include "symineq/rearrange/round_to_ball.hpp"
#include "symineq/rearrange/steiner.hpp"
#include "symineq/rearrange/step_function.hpp"

using namespace symineq;
using testgen::Gen;

namespace
{
GridSet from_cells(const GridFrame& f, const std::function<bool(const Vector&)>& in)
{
    return GridSet::from_predicate(f, in);
}

GridSet random_blob(Gen& g, const GridFrame& f)
{
    // union of three random disks
    std::vector<Ball> b;
    for (int k = 0; k < 3; ++k)
        b.push_back(Ball{g.in_box(f.dim, -0.4, 0.4), g.uniform(0.15, 0.45)});
    return from_cells(f, [&](const Vector& x) {
        for (const Ball& q : b)
            if (q.contains(x))
                return true;
        return false;
    });
}

// per-line counts along axis 0 of a 2D set
std::vector<int64_t> row_counts(const GridSet& s, double y0, double y1, double cell)
{
    std::vector<int64_t> out;
    for (double y = y0 + cell / 2; y < y1; y += cell)
    {
        int64_t c = 0;
        const GridFrame& f = s.frame();
        for (int64_t i = 0; i < f.shape[0]; ++i)
            c += s.contains(Vector{f.origin[0] + (i + 0.5) * f.cell, y});
        out.push_back(c);
    }
    return out;
}

Polytope random_polygon(Gen& g, int pts = 8)
{
    std::vector<Vector> p;
    for (int i = 0; i < pts; ++i)
        p.push_back(g.in_box(2, -1, 1));
    return convex_hull(p);
}

bool has_vertex(const Polytope& p, const Vector& v, double tol)
{
    for (const Vector& w : p.vertices())
        if (distance(v, w) <= tol)
            return true;
    return false;
}
}  // namespace

TEST(Schwarz, SpecCases)
{
    Ball b = schwarz(box({0, 0}, {1, 1}));
    EXPECT_NEAR(b.radius, 1 / std::sqrt(std::numbers::pi), 1e-12);
    EXPECT_NEAR(b.radius, 0.5642, 1e-4);
    Ball s = schwarz(Region(Shell{{3, -1, 2}, 0.0, 0.7}));
    EXPECT_NEAR(s.radius, 0.7, 1e-12);
    EXPECT_EQ(norm(s.center), 0.0);
    GridFrame f = GridFrame::covering({0, 0}, {2, 2}, 0.5);
    GridSet l = from_cells(f, [](const Vector& x) { return x[1] < 1 || x[0] < 1; });
    EXPECT_NEAR(l.volume(), 3.0, 1e-12);
    EXPECT_NEAR(schwarz(l).radius, std::sqrt(3 / std::numbers::pi), 1e-12);
    EXPECT_THROW(schwarz(GridSet(f)), DegenerateError);
}

TEST(SteinerGrid, CentresAnInterval)
{
    const double c = 1.0 / 16;
    GridFrame f = GridFrame::covering({0, 0}, {2, 1}, c);
    GridSet e = from_cells(f, [](const Vector&) { return true; });
    GridSet s = steiner_grid(e, 0);
    EXPECT_EQ(s.count(), e.count());
    GridSet expect = from_cells(s.frame(), [](const Vector& x) { return x[0] > -1 && x[0] < 1 && x[1] > 0 && x[1] < 1; });
    EXPECT_EQ(s.words(), expect.words());
    EXPECT_THROW(steiner_grid(e, 2), PreconditionError);
    EXPECT_THROW(steiner_grid(e, -1), PreconditionError);
}

TEST(SteinerGrid, SymmetricSetIsFixed)
{
    GridFrame f = GridFrame::symmetric(2, 1.0, 1.0 / 32);
    GridSet e = rasterize(Ball{{0, 0}, 0.6}, f);
    EXPECT_EQ(steiner_grid(e, 0).words(), e.words());
    EXPECT_EQ(steiner_grid(e, 1).words(), e.words());
}

TEST(SteinerGrid, LShapeKeepsRowCounts)
{
    const double c = 1.0 / 16;
    GridFrame f = GridFrame::covering({0, 0}, {2, 2}, c);
    GridSet l = from_cells(f, [](const Vector& x) { return x[1] < 1 || x[0] < 1; });
    GridSet s = steiner_grid(l, 0);
    EXPECT_EQ(s.count(), l.count());
    EXPECT_NEAR(s.volume(), 3.0, 1e-12);
    EXPECT_EQ(row_counts(s, 0, 2, c), row_counts(l, 0, 2, c));
    // runs are centred: row counts 32 below y=1 and 16 above, both even
    EXPECT_TRUE(s.contains({-0.99, 0.5}) && s.contains({0.99, 0.5}) && !s.contains({1.01, 0.5}));
    EXPECT_TRUE(s.contains({-0.49, 1.5}) && s.contains({0.49, 1.5}) && !s.contains({0.51, 1.5}));
}

TEST(SteinerGrid, IdempotentAndVolumePreservingOnRandomSets)
{
    Gen g(31);
    for (int d = 2; d <= 3; ++d)
        for (int t = 0; t < 10; ++t)
        {
            GridFrame f = GridFrame::covering(Vector(d) + g.in_box(d, -1.2, -0.9), g.in_box(d, 0.9, 1.2), d == 2 ? 1.0 / 40 : 1.0 / 12);
            GridSet e = random_blob(g, f);
            for (int axis = 0; axis < d; ++axis)
            {
                GridSet s = steiner_grid(e, axis);
                EXPECT_EQ(s.count(), e.count());
                EXPECT_EQ(steiner_grid(s, axis).words(), s.words());
            }
        }
}

TEST(StripLayout, AxisDirectionMatchesSteinerGrid)
{
    Gen g(2);
    GridFrame f = GridFrame::symmetric(2, 1.3, 1.0 / 32);
    for (int t = 0; t < 5; ++t)
    {
        GridSet e = random_blob(g, f);
        EXPECT_EQ(steiner_direction(e, Vector{1, 0}).words(), steiner_grid(e, 0).words());
        EXPECT_EQ(steiner_direction(e, Vector{0, 1}).words(), steiner_grid(e, 1).words());
    }
}

TEST(StripLayout, ObliqueDirectionsPreserveCountAndAreIdempotent)
{
    Gen g(4);
    GridFrame f = GridFrame::symmetric(2, 1.5, 1.0 / 48);
    for (int t = 0; t < 8; ++t)
    {
        GridSet e = random_blob(g, f);
        double th = g.uniform(0, std::numbers::pi);
        Vector u{std::cos(th), std::sin(th)};
        StripLayout l(f, u);
        GridSet s = l.apply(e);
        EXPECT_EQ(s.count(), e.count());
        EXPECT_EQ(l.apply(s).words(), s.words());
    }
}

TEST(SteinerPolytope, TriangleAlongSecondAxis)
{
    Polytope t = Polytope::hull_of(std::vector<Vector>{{0, 0}, {1, 0}, {0, 1}});
    Polytope s = steiner_polytope(t, Vector{0, 1});
    EXPECT_EQ(s.size(), 3u);
    EXPECT_TRUE(has_vertex(s, {0, 0.5}, 1e-12));
    EXPECT_TRUE(has_vertex(s, {0, -0.5}, 1e-12));
    EXPECT_TRUE(has_vertex(s, {1, 0}, 1e-12));
    EXPECT_NEAR(s.volume(), 0.5, 1e-15);
    // chord function l(x) = 1 - x
    for (double x : {0.1, 0.3, 0.77})
        EXPECT_NEAR(chord_length(s, Vector{0, 1}, -x), 1 - x, 1e-12);
}

TEST(SteinerPolytope, DiskPolygonIsNearlyFixed)
{
    const int k = 256;
    Polytope p = regular_polygon(k, 1.0);
    Gen g(6);
    for (int t = 0; t < 5; ++t)
    {
        double th = g.uniform(0, std::numbers::pi);
        Polytope s = steiner_polytope(p, Vector{std::cos(th), std::sin(th)});
        EXPECT_NEAR(s.volume(), p.volume(), 1e-9 * p.volume());
        EXPECT_LE(hausdorff_distance(s, p, 512), 2 * (1 - std::cos(std::numbers::pi / k)));
    }
}

TEST(SteinerPolytope, DiagonalSquareKeepsAreaAndSymmetry)
{
    Polytope sq = box({0, 0}, {1, 1});
    Vector u{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
    Polytope s = steiner_polytope(sq, u);
    EXPECT_NEAR(s.volume(), 1.0, 1e-9);
    for (const Vector& v : s.vertices())
        EXPECT_TRUE(has_vertex(s, v - u * (2 * dot(v, u)), 1e-9));
    EXPECT_THROW(steiner_polytope(box({0, 0, 0}, {1, 1, 1}), Vector{1, 0, 0}), UnsupportedError);
    std::vector<Vector> seg{{0, 0}, {1, 1}};
    EXPECT_THROW(steiner_polytope(Polytope::hull_of(seg), Vector{1, 0}), DegenerateError);
}

TEST(SteinerPolytope, NearlyVerticalEdgeKeepsArea)
{
    for (double eps : {1e-15, 3e-15, 1e-13})
    {
        Polytope q = Polytope::hull_of(std::vector<Vector>{{0, 0}, {1, 0}, {1 + eps, 1}, {eps, 1}});
        for (Vector u : {Vector{0, 1}, Vector{0, -1}})
            EXPECT_NEAR(steiner_polytope(q, u).volume(), q.volume(), 1e-12) << eps;
    }
}

TEST(SteinerPolytope, RandomPolygonsKeepVolumeConvexityAndShrinkDiameter)
{
    Gen g(12);
    for (int t = 0; t < 100; ++t)
    {
        Polytope k = random_polygon(g, g.integer(3, 12));
        if (k.volume() < 1e-3)
            continue;
        double th = g.uniform(0, 2 * std::numbers::pi);
        Vector u{std::cos(th), std::sin(th)};
        Polytope s = steiner_polytope(k, u);
        EXPECT_NEAR(s.volume(), k.volume(), 1e-9 * k.volume());
        Polytope h = convex_hull(s.vertices());
        EXPECT_EQ(h.size(), s.size());
        EXPECT_NEAR(h.volume(), s.volume(), 1e-12);
        EXPECT_LE(s.diameter(), k.diameter() + 1e-12);
        // chord lengths agree with the input's at random offsets
        for (int q = 0; q < 5; ++q)
        {
            double sv = g.uniform(-1, 1);
            EXPECT_NEAR(chord_length(s, u, sv), chord_length(k, u, sv), 1e-9);
        }
    }
}

TEST(Conjugation, IdentityIsExact)
{
    Gen g(1);
    GridSet e = random_blob(g, GridFrame::symmetric(2, 1.0, 1.0 / 64));
    ConjugationReport r = steiner_direction_conjugation_check(e, Rotation::identity(2), 0);
    EXPECT_EQ(r.symdiff, 0.0);
    EXPECT_TRUE(r.pass);
}

TEST(Conjugation, QuarterTurnOfSquare)
{
    GridFrame f = GridFrame::symmetric(2, 1.0, 1.0 / 64);
    GridSet sq = from_cells(f, [](const Vector& x) { return x[0] > 0.1 && x[0] < 0.6 && x[1] > -0.2 && x[1] < 0.4; });
    ConjugationReport r = steiner_direction_conjugation_check(sq, Rotation::planar(std::numbers::pi / 2), 0);
    EXPECT_TRUE(r.pass) << r.symdiff << " vs " << r.bound;
}

TEST(Conjugation, RandomRotationErrorShrinksWithCell)
{
    Gen g(77);
    for (int t = 0; t < 3; ++t)
    {
        std::vector<Ball> b;
        for (int k = 0; k < 3; ++k)
            b.push_back(Ball{g.in_box(2, -0.4, 0.4), g.uniform(0.2, 0.45)});
        auto in = [&](const Vector& x) {
            for (const Ball& q : b)
                if (q.contains(x))
                    return true;
            return false;
        };
        Rotation rho = Rotation::planar(g.uniform(0, 2 * std::numbers::pi));
        double err[2];
        int i = 0;
        for (double cell : {1.0 / 64, 1.0 / 128})
        {
            GridSet e = from_cells(GridFrame::symmetric(2, 1.0, cell), in);
            ConjugationReport r = steiner_direction_conjugation_check(e, rho, 1);
            EXPECT_TRUE(r.pass) << r.symdiff << " vs " << r.bound;
            err[i++] = r.symdiff;
        }
        EXPECT_LE(err[1], 0.75 * err[0]);
    }
}

TEST(RoundToBall, BallInputStopsImmediately)
{
    GridFrame f = GridFrame::symmetric(2, 1.0, 1.0 / 128);
    GridSet b = rasterize(Ball{{0, 0}, 0.6}, f);
    SymmetrisationTrace tr = round_to_ball(b, RoundOptions{});
    ASSERT_EQ(tr.steps.size(), 1u);
    EXPECT_LE(tr.steps[0].symdiff, 0.002 * tr.volume);
    EXPECT_TRUE(tr.converged);
    SymmetrisationTrace tp = round_to_ball(regular_polygon(256, 0.6), RoundOptions{});
    ASSERT_EQ(tp.steps.size(), 1u);
    EXPECT_LE(tp.steps[0].symdiff, 1e-3 * tp.volume);
}

TEST(RoundToBall, ThinRectangleConvergesOnGrid)
{
    const double cell = 1.0 / 128;
    GridSet r = rasterize(box({0, 0}, {4, 0.25}), GridFrame::covering({0, 0}, {4, 0.25}, cell));
    EXPECT_NEAR(r.volume(), 1.0, 1e-12);
    RoundOptions o;
    o.tol = 0.05;
    o.max_iters = 50;
    SymmetrisationTrace tr = round_to_ball(r, o);
    EXPECT_TRUE(tr.converged);
    EXPECT_LE(tr.steps.back().symdiff, 0.05);
    EXPECT_LE(tr.steps.size(), 51u);
    EXPECT_NEAR(tr.target.radius, 1 / std::sqrt(std::numbers::pi), 1e-12);
    EXPECT_EQ(std::get<GridSet>(tr.final_body).count(), r.count());
    RecordProperty("iterations", static_cast<int>(tr.steps.size()) - 1);
}

TEST(RoundToBall, SquareTraceIsMonotone)
{
    const double cell = 1.0 / 128;
    GridSet sq = rasterize(box({0, 0}, {1, 1}), GridFrame::covering({0, 0}, {1, 1}, cell));
    RoundOptions o;
    o.tol = 1e-6;  // run the full budget
    o.max_iters = 12;
    SymmetrisationTrace tr = round_to_ball(sq, o);
    for (std::size_t i = 1; i < tr.steps.size(); ++i)
        EXPECT_LE(tr.steps[i].symdiff, tr.steps[i - 1].symdiff);
    EXPECT_TRUE(tr.flagged);
    EXPECT_FALSE(tr.converged);
    for (const TraceStep& s : tr.steps)
        EXPECT_GE(s.symdiff, 0.0);
}

TEST(RoundToBall, PolygonRouteKeepsVolumeAndConverges)
{
    Gen g(8);
    for (int t = 0; t < 5; ++t)
    {
        Polytope k = random_polygon(g, 7);
        RoundOptions o;
        o.tol = 0.01;
        SymmetrisationTrace tr = round_to_ball(k, o);
        EXPECT_TRUE(tr.converged);
        for (std::size_t i = 1; i < tr.steps.size(); ++i)
            EXPECT_LE(tr.steps[i].symdiff, tr.steps[i - 1].symdiff + 1e-12);
        EXPECT_NEAR(std::get<Polytope>(tr.final_body).volume(), k.volume(), 1e-9 * k.volume());
        EXPECT_LT(tr.steps.back().hausdorff, tr.steps.front().hausdorff);
    }
}

TEST(RoundToBall, IrrationalBasisShrinksSymdiff)
{
    const double cell = 1.0 / 64;
    GridSet sq = rasterize(box({-0.3, -0.2}, {0.7, 0.5}), GridFrame::covering({-0.3, -0.2}, {0.7, 0.5}, cell));
    RoundOptions o;
    o.scheme = Scheme::IrrationalBasis;
    o.tol = 0.05;
    o.max_iters = 40;
    SymmetrisationTrace tr = round_to_ball(sq, o);
    EXPECT_LT(tr.steps.back().symdiff, 0.5 * tr.steps.front().symdiff);
    SymmetrisationTrace tp = round_to_ball(box({-0.3, -0.2}, {0.7, 0.5}), o);
    EXPECT_TRUE(tp.converged);
}

TEST(RoundToBall, RejectsBadOptions)
{
    RoundOptions o;
    o.tol = 0;
    EXPECT_THROW(round_to_ball(box({0, 0}, {1, 1}), o), PreconditionError);
    EXPECT_THROW(parse_scheme("spiral"), PreconditionError);
}

TEST(RearrangeFunction, SingleIndicator)
{
    StepFunction f = StepFunction::indicator(box({1, 1}, {2, 3}), 2.5);
    StepFunction r = rearrange_function(f);
    ASSERT_EQ(r.pieces().size(), 1u);
    const Shell& s = std::get<Shell>(r.pieces()[0].region);
    EXPECT_EQ(s.inner, 0.0);
    EXPECT_NEAR(unit_ball_volume(2) * s.outer * s.outer, 2.0, 1e-12);
    EXPECT_EQ(r.pieces()[0].value, 2.5);
    EXPECT_TRUE(is_radial_nonincreasing(r));
}

TEST(RearrangeFunction, RadialFunctionIsFixed)
{
    StepFunction f(2, {Piece{Shell{{0, 0}, 0.0, 1.0}, 2.0}, Piece{Shell{{0, 0}, 1.0, 2.0}, 1.0}});
    StepFunction r = rearrange_function(f);
    ASSERT_EQ(r.pieces().size(), 2u);
    for (std::size_t i = 0; i < 2; ++i)
    {
        const Shell& a = std::get<Shell>(f.pieces()[i].region);
        const Shell& b = std::get<Shell>(r.pieces()[i].region);
        EXPECT_NEAR(a.inner, b.inner, 1e-12);
        EXPECT_NEAR(a.outer, b.outer, 1e-12);
        EXPECT_EQ(f.pieces()[i].value, r.pieces()[i].value);
    }
}

TEST(RearrangeFunction, TwoSquaresLevelVolumes)
{
    StepFunction f(2, {Piece{box({0, 0}, {1, 1}), 3.0}, Piece{box({2, 0}, {4, 1}), 1.0}});
    StepFunction r = rearrange_function(f);
    for (double t : {0.5, 2.0})
        EXPECT_NEAR(r.level_volume(t), f.level_volume(t), 1e-12);
    EXPECT_NEAR(r.level_volume(0.5), 3.0, 1e-12);
    EXPECT_NEAR(r.level_volume(2.0), 1.0, 1e-12);
    EXPECT_EQ(r({0, 0}), 3.0);
    EXPECT_EQ(r({0.7, 0}), 1.0);
    EXPECT_EQ(r({2, 0}), 0.0);
}

TEST(RearrangeFunction, LevelSetConsistencyOnRandomFunctions)
{
    Gen g(19);
    for (int t = 0; t < 30; ++t)
    {
        std::vector<Piece> pieces;
        int m = g.integer(1, 4);
        for (int k = 0; k < m; ++k)
        {
            double x = 3.0 * k;
            pieces.push_back(Piece{box({x, 0}, {x + g.uniform(0.2, 2), g.uniform(0.2, 2)}), std::round(g.uniform(1, 4))});
        }
        StepFunction f(2, pieces);
        StepFunction r = rearrange_function(f);
        EXPECT_TRUE(is_radial_nonincreasing(r));
        for (double lv : {0.0, 0.5, 1.5, 2.5, 3.5, 5.0})
            EXPECT_NEAR(r.level_volume(lv), f.level_volume(lv), 1e-12 * (1 + f.level_volume(lv)));
    }
}

TEST(StepFunction, RejectsOverlapsAndBadValues)
{
    EXPECT_THROW(StepFunction(2, {Piece{box({0, 0}, {1, 1}), 1.0}, Piece{box({0.5, 0.5}, {2, 2}), 1.0}}),
                 PreconditionError);
    EXPECT_THROW(StepFunction::indicator(box({0, 0}, {1, 1}), -1.0), PreconditionError);
    EXPECT_NO_THROW(StepFunction(2, {Piece{box({0, 0}, {1, 1}), 1.0}, Piece{box({1, 0}, {2, 1}), 2.0}}));
}

TEST(Export, CsvAndSvgAreDeterministic)
{
    RoundOptions o;
    o.max_iters = 3;
    SymmetrisationTrace tr = round_to_ball(box({0, 0}, {2, 0.5}), o);
    std::string csv = trace_csv(tr);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "iter,u0,u1,symdiff,hausdorff");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), static_cast<long>(tr.steps.size()) + 1);
    std::string a = snapshots_svg(tr), b = snapshots_svg(round_to_ball(box({0, 0}, {2, 0.5}), o));
    EXPECT_EQ(a, b);
    EXPECT_NE(a.find("<polygon"), std::string::npos);
    StepFunction f(2, {Piece{box({0, 0}, {1, 1}), 3.0}, Piece{Shell{{5, 5}, 0.0, 1.0}, 1.0}});
    StepFunction h = step_function_from_json(nlohmann::json::parse(to_json(f).dump()));
    EXPECT_NEAR(h.integral(), f.integral(), 1e-12);
}
