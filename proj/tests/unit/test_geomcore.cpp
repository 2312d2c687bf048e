#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "symineq/geomcore/discretize.hpp"
#include "symineq/geomcore/distance.hpp"
#include "symineq/geomcore/ellipsoid.hpp"
#include "symineq/geomcore/error.hpp"
#include "symineq/geomcore/gridset.hpp"
#include "symineq/geomcore/region.hpp"
#include "symineq/geomcore/sampling.hpp"
#include "symineq/geomcore/serialize.hpp"

using namespace symineq;
using testgen::Gen;

namespace
{
// Brute-force facet planes of a 3D point cloud: every triple whose plane has all
// points on one side. Independent of the incremental hull code.
struct Plane
{
    Vector n;
    double off;
};

std::vector<Plane> brute_planes(const std::vector<Vector>& p)
{
    std::vector<Plane> out;
    const int m = static_cast<int>(p.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k)
            {
                Vector a = p[j] - p[i], b = p[k] - p[i];
                Vector n{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
                if (norm(n) < 1e-12)
                    continue;
                double off = dot(n, p[i]);
                int pos = 0, neg = 0;
                for (const Vector& q : p)
                {
                    double s = dot(n, q) - off;
                    pos += s > 1e-12;
                    neg += s < -1e-12;
                }
                if (pos == 0)
                    out.push_back({n, off});
                else if (neg == 0)
                    out.push_back({-n, -off});
            }
    return out;
}

double orient(const Vector& a, const Vector& b, const Vector& c)
{
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

GridSet rect_grid(const GridFrame& f, double x0, double x1, double y0, double y1)
{
    return GridSet::from_predicate(f, [&](const Vector& x) { return x[0] > x0 && x[0] < x1 && x[1] > y0 && x[1] < y1; });
}
}  // namespace

TEST(UnitBallVolume, LowDimensions)
{
    EXPECT_DOUBLE_EQ(unit_ball_volume(1), 2.0);
    EXPECT_NEAR(unit_ball_volume(2), 3.14159265, 1e-8);
    EXPECT_NEAR(unit_ball_volume(3), 4.18879020, 1e-8);
    EXPECT_THROW(unit_ball_volume(0), PreconditionError);
    EXPECT_THROW(unit_ball_volume(17), PreconditionError);
}

TEST(HullVolume, SquareAndTriangle)
{
    std::vector<Vector> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    EXPECT_NEAR(hull_volume(sq), 1.0, 1e-15);
    std::vector<Vector> tri{{0, 0}, {1, 0}, {0, 1}};
    EXPECT_NEAR(hull_volume(tri), 0.5, 1e-15);
    std::vector<Vector> flat{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
    EXPECT_EQ(hull_volume(flat), 0.0);
    EXPECT_THROW(hull_volume(std::vector<Vector>{}), PreconditionError);
    std::vector<Vector> mixed{{0, 0}, {1, 0, 0}};
    EXPECT_THROW(hull_volume(mixed), PreconditionError);
}

TEST(HullVolume, RandomCloudMatchesMonteCarloMembership)
{
    Gen g(11);
    auto pts = g.cloud(3, 20);
    auto planes = brute_planes(pts);
    std::mt19937_64 eng(99);
    std::uniform_real_distribution<double> u(-1, 1);
    const int samples = 1000000;
    int hits = 0;
    for (int s = 0; s < samples; ++s)
    {
        Vector x{u(eng), u(eng), u(eng)};
        bool in = true;
        for (const Plane& p : planes)
            if (dot(p.n, x) > p.off)
            {
                in = false;
                break;
            }
        hits += in;
    }
    double frac = static_cast<double>(hits) / samples;
    double mc = 8.0 * frac, sigma = 8.0 * std::sqrt(frac * (1 - frac) / samples);
    EXPECT_NEAR(hull_volume(pts), mc, 3 * sigma);
}

TEST(ConvexHull, DropsInteriorAndCollinearPoints)
{
    std::vector<Vector> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
    EXPECT_EQ(convex_hull(sq).size(), 4u);
    std::vector<Vector> line{{0, 0}, {1, 1}, {2, 2}};
    Polytope l = convex_hull(line);
    EXPECT_EQ(l.size(), 2u);
    EXPECT_EQ(l.volume(), 0.0);
}

TEST(ConvexHull, DiskCloudVerticesPassOrientationCheck)
{
    Gen g(5);
    auto pts = g.cloud(2, 100);
    Polytope p = convex_hull(pts);
    EXPECT_NEAR(p.volume(), hull_volume(pts), 1e-14);
    // every output vertex has a supporting line through it and a neighbour vertex
    for (const Vector& v : p.vertices())
    {
        bool supported = false;
        for (const Vector& w : p.vertices())
        {
            if (w == v)
                continue;
            bool left = true, right = true;
            for (const Vector& q : pts)
            {
                double o = orient(v, w, q);
                left &= o >= -1e-12;
                right &= o <= 1e-12;
            }
            supported |= left || right;
        }
        EXPECT_TRUE(supported);
    }
    // and every input point outside the output list lies strictly inside some triangle of it
    for (const Vector& q : pts)
        EXPECT_TRUE(p.contains(q, 1e-9));
}

TEST(Hausdorff, SpecCases)
{
    Polytope sq = box({0, 0}, {1, 1});
    EXPECT_EQ(hausdorff_distance(sq, sq, 256), 0.0);
    EXPECT_NEAR(hausdorff_distance(sq, sq.translated({1, 0}), 256), 1.0, 0.02);
    Ball a{{0, 0, 0}, 1}, b{{0, 0, 0}, 2};
    EXPECT_NEAR(hausdorff_distance(a, b, 256), 1.0, 1e-9);
    EXPECT_THROW(hausdorff_distance(sq, sq, 50), PreconditionError);
    EXPECT_THROW(hausdorff_distance(sq, box({0, 0, 0}, {1, 1, 1}), 256), PreconditionError);
}

TEST(Symdiff, SpecCases)
{
    GridFrame f = GridFrame::covering({-1, -1}, {4, 3}, 1.0 / 64);
    GridSet a = rect_grid(f, 0, 2, 0, 1), b = rect_grid(f, 1, 3, 0, 1);
    EXPECT_EQ(symdiff_volume(a, a), 0.0);
    GridSet c = rect_grid(f, 0, 1, 0, 1), d = rect_grid(f, 2, 3, 0, 1);
    EXPECT_NEAR(symdiff_volume(c, d), 2.0, 2 * 4.0 / 64);
    EXPECT_NEAR(symdiff_volume(a, b), 2.0, 2 * (1.0 / 64) * 2);
    GridSet other(GridFrame::covering({-1, -1}, {4, 3}, 1.0 / 50));
    EXPECT_THROW(symdiff_volume(a, other), PreconditionError);
    EXPECT_NO_THROW(symdiff_volume(a, other, true));
}

TEST(Symdiff, MetricOnRandomTriples)
{
    Gen g(3);
    GridFrame f = GridFrame::symmetric(2, 1.0, 1.0 / 32);
    for (int t = 0; t < 30; ++t)
    {
        std::vector<GridSet> s;
        for (int k = 0; k < 3; ++k)
        {
            double cx = g.uniform(-0.5, 0.5), cy = g.uniform(-0.5, 0.5), r = g.uniform(0.1, 0.6);
            s.push_back(rasterize(Ball{{cx, cy}, r}, f));
        }
        EXPECT_EQ(symdiff_volume(s[0], s[0]), 0.0);
        EXPECT_EQ(symdiff_volume(s[0], s[1]), symdiff_volume(s[1], s[0]));
        EXPECT_LE(symdiff_volume(s[0], s[2]), symdiff_volume(s[0], s[1]) + symdiff_volume(s[1], s[2]) + 1e-15);
    }
}

TEST(Symdiff, AlignedFramesWithOffsets)
{
    GridFrame f1 = GridFrame::covering({0, 0}, {2, 2}, 0.25);
    GridFrame f2 = GridFrame::covering({1, 1}, {3, 3}, 0.25);
    GridSet a = rect_grid(f1, 0, 2, 0, 2), b = rect_grid(f2, 1, 3, 1, 3);
    // overlap [1,2]^2 has area 1; each set has area 4
    EXPECT_NEAR(symdiff_volume(a, b), 6.0, 1e-12);
}

TEST(Loewner, SquareGivesCircumscribedDisk)
{
    Polytope sq = box({-1, -1}, {1, 1});
    EllipsoidPair e = loewner_john(sq);
    Matrix s = e.outer.shape();
    EXPECT_NEAR(s(0, 0), 2.0, 1e-5);
    EXPECT_NEAR(s(1, 1), 2.0, 1e-5);
    EXPECT_NEAR(s(0, 1), 0.0, 1e-5);
    EXPECT_NEAR(norm(e.outer.center()), 0.0, 1e-6);
    Matrix si = e.inner.shape();
    EXPECT_NEAR(si(0, 0), 0.5, 1e-5);
    EXPECT_GE(inner_scale_limit(e.inner, sq), 1.0 - 1e-6);
}

TEST(Loewner, TriangleInnerVolumeBound)
{
    std::vector<Vector> tri{{0, 0}, {1, 0}, {0, 1}};
    Polytope t = Polytope::hull_of(tri);
    EllipsoidPair e = loewner_john(t);
    EXPECT_GE(e.inner.volume(), 0.125);
    EXPECT_GE(inner_scale_limit(e.inner, t), 1.0 - 1e-6);
    for (const Vector& v : t.vertices())
        EXPECT_LE(e.outer.gauge(v), 1.0 + 1e-9);
}

TEST(Loewner, BallIsItsOwnOuterEllipsoid)
{
    Polytope b = discretized_ball(2, 1.0, 256);
    EllipsoidPair e = loewner_john(b);
    EXPECT_NEAR(e.outer.volume(), std::numbers::pi, 1e-5);
    EXPECT_NEAR(e.outer.volume(), 2.0 * 2.0 * e.inner.volume(), 1e-12);
}

TEST(Loewner, DegenerateBodyThrows)
{
    std::vector<Vector> seg{{0, 0}, {1, 1}};
    EXPECT_THROW(loewner_john(Polytope::hull_of(seg)), DegenerateError);
}

TEST(Loewner, SandwichOnRandomPolytopes)
{
    Gen g(21);
    for (int d = 2; d <= 3; ++d)
        for (int t = 0; t < 15; ++t)
        {
            Polytope p = convex_hull(g.cloud(d, 12));
            EllipsoidPair e = loewner_john(p);
            for (const Vector& v : p.vertices())
                EXPECT_LE(e.outer.gauge(v), 1.0 + 1e-9);
            EXPECT_GE(inner_scale_limit(e.inner, p), 1.0 - 1e-6);
            EXPECT_NEAR(e.outer.volume(), std::pow(d, d) * e.inner.volume(), 1e-9 * e.outer.volume());
            EXPECT_GE(e.inner.volume(), p.volume() / std::pow(d, d) * (1 - 1e-6));
        }
}

TEST(InscribedBox, DiskAndBall)
{
    Polytope sq = inscribed_box(Ellipsoid::from_ball(Ball{{0, 0}, 1}));
    EXPECT_NEAR(sq.volume(), 2.0, 1e-12);
    EXPECT_NEAR(sq.volume() / std::numbers::pi, 0.6366, 1e-4);
    Polytope cube = inscribed_box(Ellipsoid::from_ball(Ball{{0, 0, 0}, 1}));
    EXPECT_NEAR(cube.volume(), 8.0 / (3.0 * std::sqrt(3.0)), 1e-12);
    EXPECT_NEAR(cube.volume(), 1.5396, 1e-4);
    Matrix deg = Matrix::Zero(2, 2);
    deg(0, 0) = 1;
    EXPECT_ANY_THROW(inscribed_box(Ellipsoid({0, 0}, deg)));
    Matrix tilted = Rotation::planar(0.4).matrix() * Eigen::Vector2d(2, 1).asDiagonal();
    EXPECT_THROW(inscribed_box(Ellipsoid({0, 0}, tilted)), PreconditionError);
}

TEST(AlignRotation, ThirtyDegreeEllipse)
{
    const double th = std::numbers::pi / 6;
    Matrix axes = Rotation::planar(th).matrix() * Eigen::Vector2d(3, 1).asDiagonal();
    Ellipsoid e({0, 0}, axes);
    Rotation r = align_rotation(e);
    Matrix q = r.matrix() * e.shape() * r.matrix().transpose();
    EXPECT_LT(std::abs(q(0, 1)), 1e-9);
    EXPECT_NEAR(r.matrix().determinant(), 1.0, 1e-12);
    // the rotation undoes 30 degrees up to a quarter-turn and sign
    double ang = std::atan2(r.matrix()(1, 0), r.matrix()(0, 0));
    double m = std::fmod(std::abs(ang + th), std::numbers::pi / 2);
    EXPECT_LT(std::min(m, std::numbers::pi / 2 - m), 1e-9);
    Rotation id = align_rotation(Ellipsoid({1, 2}, Eigen::Vector2d(1, 2).asDiagonal()));
    Matrix q2 = id.matrix() * Matrix(Eigen::Vector2d(1, 4).asDiagonal()) * id.matrix().transpose();
    EXPECT_LT(std::abs(q2(0, 1)), 1e-12);
}

TEST(HullVolume, RigidMotionInvariance)
{
    Gen g(8);
    for (int d = 2; d <= 4; ++d)
        for (int t = 0; t < 10; ++t)
        {
            auto pts = g.cloud(d, 15);
            double v = hull_volume(pts);
            Matrix r = g.rotation(d);
            Vector shift = g.in_box(d, -3, 3);
            std::vector<Vector> moved;
            for (const Vector& p : pts)
                moved.push_back(apply(r, p) + shift);
            EXPECT_NEAR(hull_volume(moved), v, 1e-9 * v);
        }
}

TEST(HullVolume, LinearMapScalesByDeterminant)
{
    Gen g(9);
    for (int d = 2; d <= 3; ++d)
        for (int t = 0; t < 10; ++t)
        {
            auto pts = g.cloud(d, 12);
            Matrix m = g.invertible(d);
            std::vector<Vector> img;
            for (const Vector& p : pts)
                img.push_back(apply(m, p));
            double v = hull_volume(pts);
            EXPECT_NEAR(hull_volume(img), std::abs(m.determinant()) * v, 1e-9 * v);
        }
}

TEST(HullVolume, FourDimensionalSimplexAndCube)
{
    std::vector<Vector> s{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    EXPECT_NEAR(hull_volume(s), 1.0 / 24, 1e-15);
    Polytope c = box({-1, -1, -1, -1}, {1, 1, 1, 1});
    EXPECT_EQ(c.size(), 16u);
    EXPECT_NEAR(c.volume(), 16.0, 1e-12);
}

TEST(Rasterize, ConvergesToPolytopeVolume)
{
    std::vector<Vector> pts{{0.1, -0.3}, {0.9, 0.2}, {0.2, 0.8}, {-0.6, 0.1}};
    Polytope p = Polytope::hull_of(pts);
    double err[2];
    double cells[2] = {1.0 / 32, 1.0 / 64};
    for (int i = 0; i < 2; ++i)
    {
        GridSet g = rasterize(p, GridFrame::symmetric(2, 1.0, cells[i]));
        err[i] = std::abs(g.volume() - p.volume());
        // boundary layer bound: perimeter × cell
        double per = 0;
        const auto& v = p.hull().vertices;
        for (std::size_t k = 0; k < v.size(); ++k)
            per += distance(v[k], v[(k + 1) % v.size()]);
        EXPECT_LE(err[i], per * cells[i]);
    }
}

TEST(GridFrame, SymmetricAndLocate)
{
    GridFrame f = GridFrame::symmetric(2, 1.0, 0.25);
    EXPECT_EQ(f.shape[0], 8);
    EXPECT_DOUBLE_EQ(f.origin[0], -1.0);
    int64_t i = f.locate({0.1, -0.1});
    Vector c = f.center(i);
    EXPECT_DOUBLE_EQ(c[0], 0.125);
    EXPECT_DOUBLE_EQ(c[1], -0.125);
    EXPECT_EQ(f.locate({5, 0}), -1);
    std::array<int64_t, 4> big{70000, 70000, 1, 1};
    EXPECT_THROW(GridFrame(Vector{0, 0, 0, 0}, 1.0, big), UnsupportedError);
    std::array<int64_t, 5> five{1, 1, 1, 1, 1};
    EXPECT_THROW(GridFrame(Vector(5), 1.0, five), UnsupportedError);
}

TEST(Serialize, RoundTrips)
{
    Polytope p = box({0, 0, 0}, {1, 2, 3});
    Polytope q = polytope_from_json(Json::parse(to_json(p).dump()));
    EXPECT_NEAR(q.volume(), 6.0, 1e-12);
    GridFrame f = GridFrame::symmetric(2, 1.0, 0.1);
    GridSet g = rasterize(Ball{{0.1, 0}, 0.7}, f);
    GridSet h = gridset_from_json(Json::parse(to_json(g).dump()));
    EXPECT_EQ(g.words(), h.words());
    EXPECT_TRUE(h.frame().same_as(f));
    Ellipsoid e({1, 2}, Rotation::planar(0.3).matrix() * 2.0);
    Ellipsoid e2 = ellipsoid_from_json(to_json(e));
    EXPECT_NEAR((e2.axes() - e.axes()).norm(), 0.0, 1e-15);
    Json bad = to_json(p);
    bad["schema"] = "symineq/v0";
    EXPECT_THROW(polytope_from_json(bad), FormatError);
    Region r = region_from_json(Json{{"type", "ball"}, {"center", {0, 0}}, {"radius", 2.0}});
    EXPECT_NEAR(region_volume(r), 4 * std::numbers::pi, 1e-12);
}

TEST(Serialize, BitPackingIsLsbFirst)
{
    std::vector<uint64_t> w{0b101};
    EXPECT_EQ(encode_bits(w, 3), "BQ==");
    EXPECT_EQ(decode_bits("BQ==", 3), w);
}

TEST(Sampling, CounterRngIsPureAndUniform)
{
    CounterRng a(42), b(42), c(43);
    EXPECT_EQ(a.bits(10, 3), b.bits(10, 3));
    EXPECT_NE(a.bits(10, 3), c.bits(10, 3));
    EXPECT_NE(a.bits(10, 3), a.bits(10, 4));
    auto est = mc_estimate(200000, 42, [&](uint64_t i) { return a.uniform(i, 0); });
    EXPECT_NEAR(est.mean, 0.5, 3 * est.stderr + 1e-3);
    auto again = mc_estimate(200000, 42, [&](uint64_t i) { return a.uniform(i, 0); });
    EXPECT_EQ(est.mean, again.mean);
    EXPECT_EQ(est.stderr, again.stderr);
}

TEST(Sampling, RegionSamplersStayInside)
{
    CounterRng rng(7);
    Polytope tri = Polytope::hull_of(std::vector<Vector>{{0, 0}, {1, 0}, {0, 1}});
    Shell sh{{0.5, -0.5, 0.0}, 0.3, 0.8};
    GridSet g = rasterize(Ball{{0, 0}, 0.5}, GridFrame::symmetric(2, 1.0, 0.05));
    RegionSampler sp = RegionSampler::of(tri), ss = RegionSampler::of(sh), sg = RegionSampler::of(g);
    Vector mean(2);
    for (uint64_t i = 0; i < 20000; ++i)
    {
        Vector x = sp.sample(rng, i, 0);
        EXPECT_TRUE(tri.contains(x, 1e-9));
        mean += x * (1.0 / 20000);
        Vector y = ss.sample(rng, i, 0);
        double r = distance(y, sh.center);
        EXPECT_TRUE(r >= 0.3 - 1e-12 && r <= 0.8 + 1e-12);
        EXPECT_TRUE(g.contains(sg.sample(rng, i, 0)));
    }
    EXPECT_NEAR(mean[0], 1.0 / 3, 0.01);
    EXPECT_NEAR(sp.volume(), 0.5, 1e-15);
}

TEST(Discretize, PolygonInradius)
{
    Polytope p = regular_polygon(256, 1.0);
    EXPECT_NEAR(inradius_ratio(p, {0, 0}, 1.0), std::cos(std::numbers::pi / 256), 1e-12);
    EXPECT_EQ(p.size(), 256u);
}
