#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "gen.hpp"
#include "symineq/geomcore/error.hpp"
#include "symineq/matinq/constants_db.hpp"
#include "symineq/matinq/experiments.hpp"
#include "symineq/matinq/lp.hpp"
#include "symineq/matinq/search.hpp"

using namespace symineq;
using testgen::Gen;

namespace
{
Matrix mat2(double a, double b, double c, double d)
{
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

MatrixSet random_matrix_polytope(Gen& g, int count, double r = 1)
{
    std::vector<Matrix> v;
    for (int i = 0; i < count; ++i)
        v.push_back(g.matrix(2, -r, r));
    return MatrixSet::polytope(2, v);
}
}  // namespace

TEST(Lp, SmallMaximization)
{
    // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6
    Eigen::MatrixXd a(2, 4);
    a << 1, 2, 1, 0, 3, 1, 0, 1;
    Eigen::VectorXd b(2), c(4);
    b << 4, 6;
    c << 1, 1, 0, 0;
    LpResult r = solve_lp(a, b, c);
    ASSERT_EQ(r.status, LpStatus::Optimal);
    EXPECT_NEAR(r.value, 2.8, 1e-12);
    EXPECT_NEAR(r.x[0], 1.6, 1e-12);
}

TEST(Lp, InfeasibleAndUnbounded)
{
    Eigen::MatrixXd a(1, 2);
    a << 1, 1;
    Eigen::VectorXd b(1), c(2);
    b << -1;
    c << 1, 0;
    EXPECT_EQ(solve_lp(a, b, c).status, LpStatus::Infeasible);
    a << 1, -1;
    b << 0;
    EXPECT_EQ(solve_lp(a, b, c).status, LpStatus::Unbounded);
}

TEST(Lp, ConvexWeights)
{
    Eigen::MatrixXd pts(2, 3);
    pts << 0, 1, 0, 0, 0, 1;
    Eigen::VectorXd x(2);
    x << 0.25, 0.25;
    Eigen::VectorXd w = convex_weights(pts, x);
    ASSERT_EQ(w.size(), 3);
    EXPECT_NEAR((pts * w - x).norm(), 0, 1e-12);
    EXPECT_NEAR(w.sum(), 1, 1e-12);
    x << 1, 1;
    EXPECT_EQ(convex_weights(pts, x).size(), 0);
}

TEST(MatSup, UnitBall)
{
    DetSupResult r = mat_sup_abs_det(MatrixSet::ball(2, 1.0));
    EXPECT_NEAR(r.value, 0.5, 1e-4);
    EXPECT_LE(r.value, 0.5 + 1e-12);
    ASSERT_EQ(r.argmax.size(), 1u);
    EXPECT_LE(norm(r.argmax[0]), 1 + 1e-12);
}

TEST(MatSup, BallScalesWithRadiusSquared)
{
    for (double r : {0.3, 2.0, 5.0})
        EXPECT_NEAR(mat_sup_abs_det(MatrixSet::ball(2, r)).value, r * r / 2, 1e-4 * r * r);
}

TEST(MatSup, ThreeByThreeBall)
{
    // sup over the unit ball in ℝ⁹ is (1/√3)³ (orthogonal columns of equal length)
    DetSupResult r = mat_sup_abs_det(MatrixSet::ball(3, 1.0));
    EXPECT_NEAR(r.value, std::pow(3.0, -1.5), 1e-4);
}

TEST(MatSup, AxisEllipsoidBeatsAmGmBound)
{
    Gen g(11);
    for (int t = 0; t < 6; ++t)
    {
        double l[4];
        Matrix axes = Matrix::Zero(4, 4);
        for (int k = 0; k < 4; ++k)
            axes(k, k) = l[k] = g.uniform(0.2, 2);
        MatrixSet e(2, Ellipsoid(Vector(4), axes));
        // coordinates: a = 0, c = 1, b = 2, d = 3 in column-major order; bound (l_a l_d + l_b l_c)/4
        double lower = (l[0] * l[3] + l[1] * l[2]) / 4;
        EXPECT_GE(mat_sup_abs_det(e).value, lower * (1 - 1e-9));
    }
}

TEST(MatSup, Singleton)
{
    DetSupResult r = mat_sup_abs_det(MatrixSet::singleton(Matrix::Identity(2, 2)));
    EXPECT_DOUBLE_EQ(r.value, 1.0);
    EXPECT_TRUE(r.certificate);
    DetSupResult r3 = mat_sup_abs_det(MatrixSet::singleton(Matrix::Identity(3, 3)));
    EXPECT_DOUBLE_EQ(r3.value, 1.0);
}

TEST(MatSup, PolytopeMatchesDenseSampling)
{
    Gen g(5);
    for (int t = 0; t < 8; ++t)
    {
        MatrixSet e = random_matrix_polytope(g, 7);
        DetSupResult r = mat_sup_abs_det(e);
        EXPECT_GE(r.value, vertex_scan_abs_det(std::get<Polytope>(e.rep()), 2) - 1e-12);
        ASSERT_EQ(r.argmax.size(), 1u);
        EXPECT_TRUE(e.contains(r.argmax[0], 1e-7));
        EXPECT_NEAR(std::abs(flat_det(r.argmax[0], 2)), r.value, 1e-12);
        MatrixSampler s(e);
        CounterRng rng(t, 1);
        for (uint64_t i = 0; i < 5000; ++i)
            EXPECT_LE(std::abs(flat_det(s.sample(rng, i), 2)), r.value + 1e-9);
    }
}

TEST(MatSup, SegmentInteriorBeatsVertices)
{
    // the segment from e11 to e22 peaks at its midpoint with det 1/4
    MatrixSet e = MatrixSet::polytope(2, {mat2(1, 0, 0, 0), mat2(0, 0, 0, 1)});
    EXPECT_EQ(vertex_scan_abs_det(std::get<Polytope>(e.rep()), 2), 0.0);
    EXPECT_NEAR(mat_sup_abs_det(e).value, 0.25, 1e-9);
}

TEST(MatSup, GridBall)
{
    Ball b{Vector(4), 1.0};
    MatrixSet e(2, rasterize(b, GridFrame::symmetric(4, 1.0, 1.0 / 16)));
    double v = mat_sup_abs_det(e).value;
    EXPECT_LE(v, 0.5 + 1e-12);
    EXPECT_GT(v, 0.45);
}

TEST(MatSupSum, TwoHalfBalls)
{
    std::vector<MatrixSet> sets{MatrixSet::ball(2, 0.5), MatrixSet::ball(2, 0.5)};
    DetSupResult r = mat_sup_det_sum(sets);
    EXPECT_NEAR(r.value, 0.5, 1e-4);
    EXPECT_LE(r.value, 0.5 + 1e-12);
}

TEST(MatSupSum, ZeroSets)
{
    MatrixSet z = MatrixSet::singleton(Matrix::Zero(2, 2));
    std::vector<MatrixSet> sets{z, z};
    DetSupResult r = mat_sup_det_sum(sets);
    EXPECT_EQ(r.value, 0.0);
    EXPECT_TRUE(r.certificate);
    EXPECT_THROW(theorem31_ratio(sets), PreconditionError);
}

TEST(MatSupSum, ArityAndSizeChecks)
{
    std::vector<MatrixSet> mixed{MatrixSet::ball(2, 1), MatrixSet::ball(3, 1)};
    EXPECT_THROW(mat_sup_det_sum(mixed), PreconditionError);
    std::vector<MatrixSet> three{MatrixSet::ball(2, 1), MatrixSet::ball(2, 1), MatrixSet::ball(2, 1)};
    EXPECT_THROW(theorem31_ratio(three), PreconditionError);
}

TEST(MatSupSum, PolytopeTuplesBeatSamples)
{
    Gen g(17);
    for (int t = 0; t < 5; ++t)
    {
        std::vector<MatrixSet> sets{random_matrix_polytope(g, 5), random_matrix_polytope(g, 5)};
        DetSupResult r = mat_sup_det_sum(sets);
        EXPECT_EQ(r.method, SupMethod::ExhaustiveVertices);
        MatrixSampler s0(sets[0]), s1(sets[1]);
        CounterRng rng(t, 2);
        for (uint64_t i = 0; i < 3000; ++i)
            EXPECT_LE(std::abs(flat_det(s0.sample(rng, i) + s1.sample(rng, i, s0.lanes()), 2)), r.value + 1e-9);
        EXPECT_NEAR(std::abs(flat_det(r.argmax[0] + r.argmax[1], 2)), r.value, 1e-12);
    }
}

TEST(Ratios, BallsFinite)
{
    std::vector<MatrixSet> sets{MatrixSet::ball(2, 1), MatrixSet::ball(2, 1)};
    RatioReport r = theorem31_ratio(sets);
    EXPECT_FALSE(r.infinite);
    // |B|^{1/4}·|B|^{1/4} / sup over the radius-2 ball
    double vol = std::pow(std::numbers::pi, 2) / 2;
    EXPECT_NEAR(r.ratio, std::sqrt(vol) / 2.0, 1e-3);
    RatioReport b = corollary_b_ratio(MatrixSet::ball(2, 1));
    EXPECT_NEAR(b.ratio, std::sqrt(vol) / 0.5, 5e-3);
}

TEST(Ratios, InfiniteFlagAndZeroOverZero)
{
    // one grid cell centred at the zero matrix: positive volume, every candidate has det 0
    std::array<int64_t, 4> shape{1, 1, 1, 1};
    GridFrame f(Vector{-0.5, -0.5, -0.5, -0.5}, 1.0, shape);
    GridSet g(f);
    g = GridSet::from_predicate(f, [](const Vector&) { return true; });
    RatioReport r = corollary_b_ratio(MatrixSet(2, g));
    EXPECT_TRUE(r.infinite);
    EXPECT_TRUE(std::isinf(r.ratio));
    EXPECT_TRUE(to_json(r)["ratio"].is_null());

    std::vector<double> lam{1.0, -1.0};
    EXPECT_THROW(corollary_a_ratio(MatrixSet::singleton(mat2(1, 0, 0, 1)), lam), PreconditionError);
}

TEST(MatProps, OriginHullKeepsVertexScan)
{
    Gen g(23);
    for (int t = 0; t < 10; ++t)
    {
        MatrixSet e = random_matrix_polytope(g, 6);
        MatrixSet z = e.with_origin();
        EXPECT_DOUBLE_EQ(vertex_scan_abs_det(std::get<Polytope>(z.rep()), 2),
                         vertex_scan_abs_det(std::get<Polytope>(e.rep()), 2));
        EXPECT_NEAR(mat_sup_abs_det(z).value, mat_sup_abs_det(e).value, 1e-9);
    }
}

TEST(MatProps, ScalingKeepsRatio)
{
    Gen g(29);
    MatrixSet e = random_matrix_polytope(g, 8);
    double s0 = mat_sup_abs_det(e).value, v0 = e.volume();
    for (double r : {0.5, 3.0})
    {
        MatrixSet f = e.scaled(r);
        EXPECT_NEAR(mat_sup_abs_det(f).value, r * r * s0, 1e-9 * r * r);
        EXPECT_NEAR(std::sqrt(f.volume()), r * r * std::sqrt(v0), 1e-9 * r * r);
    }
}

TEST(MatProps, ColumnConvexity)
{
    // with the other column fixed, |det| along a segment in one column peaks at an end
    Gen g(31);
    for (int t = 0; t < 200; ++t)
    {
        Vector x = g.in_box(4, -1, 1), y = g.in_box(4, -1, 1);
        int col = g.integer(0, 1);
        for (int k = 0; k < 4; ++k)
            if (k / 2 != col)
                y[k] = x[k];
        double ends = std::max(std::abs(flat_det(x, 2)), std::abs(flat_det(y, 2)));
        for (int i = 1; i < 20; ++i)
        {
            double l = i / 20.0;
            EXPECT_LE(std::abs(flat_det(x * (1 - l) + y * l, 2)), ends + 1e-12);
        }
    }
}

TEST(MatProps, TranslationInDifferenceForm)
{
    // Σ s_j = 0 makes |det(Σ s_j T_j)| blind to a common shift T_j → T_j − A
    Gen g(37);
    for (int t = 0; t < 50; ++t)
    {
        Matrix a = g.matrix(3), t1 = g.matrix(3), t2 = g.matrix(3), t3 = g.matrix(3);
        double s1 = 1, s2 = -2, s3 = 1;
        double before = (s1 * t1 + s2 * t2 + s3 * t3).determinant();
        double after = (s1 * (t1 - a) + s2 * (t2 - a) + s3 * (t3 - a)).determinant();
        EXPECT_NEAR(before, after, 1e-10);
    }
}

TEST(Counterexample, VolumeAndRatio)
{
    for (double n : {std::exp(1.0), 10.0})
    {
        CounterexampleReport r = nonconvex_counterexample(n);
        EXPECT_TRUE(r.pass);
        EXPECT_NEAR(r.volume, std::pow(2 * std::log(n), 2), 0.03 * r.volume_exact);
        EXPECT_NEAR(r.volume_direct, r.volume_exact, 0.03 * r.volume_exact);
        EXPECT_LE(r.sup, 2 + 1e-9);
        EXPECT_LE(r.sup_search, 2 + 1e-9);
        EXPECT_GE(r.ratio, std::log(n));
    }
    CounterexampleReport e = nonconvex_counterexample(std::exp(1.0));
    EXPECT_NEAR(e.volume_exact, 4.0, 1e-12);
    EXPECT_GE(e.ratio, 1.0);
    CounterexampleReport e5 = nonconvex_counterexample(std::exp(5.0));
    EXPECT_NEAR(e5.volume, 100.0, 3.0);
    EXPECT_GE(e5.ratio, 5.0);
}

TEST(Counterexample, GrowthInN)
{
    double prev = 0;
    for (double n : {10.0, 100.0, 1000.0})
    {
        CounterexampleReport r = nonconvex_counterexample(n);
        EXPECT_TRUE(r.pass) << n;
        EXPECT_GT(r.ratio, prev);
        prev = r.ratio;
    }
}

TEST(Counterexample, Preconditions)
{
    EXPECT_THROW(nonconvex_counterexample(1.0), PreconditionError);
    EXPECT_THROW(nonconvex_counterexample(0.5), PreconditionError);
    EXPECT_FALSE(in_counterexample_set(Vector{0.5, 0, 0.5, 3}, 10));
    EXPECT_TRUE(in_counterexample_set(Vector{0.5, 0, 0.5, 2}, 10));
}

TEST(PerturbedBall, SupStaysHalf)
{
    for (double delta : {0.03, 0.0, 0.039})
    {
        PerturbedBallReport r = perturbed_ball_experiment(delta);
        EXPECT_TRUE(r.pass) << delta;
        EXPECT_NEAR(r.sup, 0.5, 1e-3);
        EXPECT_NEAR(r.ball_sup, 0.5, 1e-6);
    }
    EXPECT_THROW(perturbed_ball_experiment(0.05), PreconditionError);
    EXPECT_THROW(perturbed_ball_experiment(-0.01), PreconditionError);
}

TEST(Slicing, AxisBox)
{
    Vector lo{-1, -0.5, 0, -0.25}, hi{1, 0.5, 0.5, 0.25};
    GridFrame f = GridFrame::covering(Vector{-1, -1, -1, -1}, Vector{1, 1, 1, 1}, 0.125);
    GridSet g = rasterize(box(lo, hi), f);
    SliceChain c = slicing_decomposition(MatrixSet(2, g));
    ASSERT_EQ(c.levels.size(), 1u);
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.levels[0].cells, c.levels[0].v_cells * c.levels[0].fibre_cells);
    EXPECT_NEAR(c.levels[0].fibre_volume, 0.5 * 0.5, 1e-12);
    EXPECT_NEAR(c.levels[0].v_volume, 2.0 * 1.0, 1e-12);
}

TEST(Slicing, RandomGridSetsHoldExactly)
{
    Gen g(41);
    GridFrame f = GridFrame::symmetric(4, 1.0, 0.125);
    for (int t = 0; t < 20; ++t)
    {
        std::vector<Vector> pts = g.cloud(4, 12);
        GridSet s = rasterize(convex_hull(pts), f);
        if (s.empty())
            continue;
        SliceChain c = slicing_decomposition(MatrixSet(2, s));
        EXPECT_TRUE(c.holds);
        for (const SliceLevel& l : c.levels)
            EXPECT_LE(l.cells, l.v_cells * l.fibre_cells);
    }
}

TEST(Slicing, BallGridAndSingleCell)
{
    GridFrame f = GridFrame::symmetric(4, 1.0, 0.1);
    SliceChain c = slicing_decomposition(MatrixSet(2, rasterize(Ball{Vector(4), 1.0}, f)));
    EXPECT_TRUE(c.holds);
    EXPECT_LT(c.levels[0].cells, c.levels[0].v_cells * c.levels[0].fibre_cells);

    GridSet one(f);
    one = GridSet::from_predicate(f, [&](const Vector& x) { return f.locate(x) == 17; });
    SliceChain s = slicing_decomposition(MatrixSet(2, one));
    EXPECT_EQ(s.levels[0].cells, 1);
    EXPECT_EQ(s.levels[0].v_cells, 1);
    EXPECT_EQ(s.levels[0].fibre_cells, 1);
    EXPECT_NEAR(s.levels[0].fibre_volume, 0.01, 1e-15);
    EXPECT_THROW(slicing_decomposition(MatrixSet(2, GridSet(f))), PreconditionError);
}

TEST(Slicing, ThreeByThreeProduct)
{
    GridFrame f = GridFrame::symmetric(3, 1.0, 0.25);  // 8 cells per axis
    std::vector<GridSet> cols{rasterize(Ball{Vector(3), 0.6}, f), rasterize(box({-1, -1, -0.5}, {0.5, 1, 0.5}), f),
                              rasterize(Ball{Vector(3), 0.9}, f)};
    CellSet e = CellSet::column_product(cols);
    EXPECT_EQ(e.count(), cols[0].count() * cols[1].count() * cols[2].count());
    SliceChain c = slicing_decomposition(e);
    ASSERT_EQ(c.levels.size(), 2u);
    EXPECT_TRUE(c.holds);
    // product sets slice exactly: every fibre is the last column set
    EXPECT_EQ(c.levels[0].fibre_cells, cols[2].count());
    EXPECT_EQ(c.levels[1].fibre_cells, cols[1].count());
    EXPECT_EQ(c.levels[1].v_cells, cols[0].count());
    EXPECT_EQ(static_cast<int64_t>(c.chain_product), e.count());
}

TEST(Witness, UnitBall)
{
    MatrixSet e = MatrixSet::ball(2, 1.0);
    Lemma132Witness w = lemma132_witness(e);
    EXPECT_TRUE(w.members);
    EXPECT_GE(w.value, 1.0);
    EXPECT_GE(w.ratio, 0.45);
    EXPECT_EQ(w.patterns, 3);
    EXPECT_GE(w.value, w.all_ones_value);
    Vector m(4);
    for (int j = 0; j < 2; ++j)
        if (w.signs[j])
            m += w.matrices[j];
    EXPECT_DOUBLE_EQ(std::abs(flat_det(m, 2)), w.value);
    // the explicit pair e11, e22 already gives 1
    EXPECT_TRUE(e.contains(mat2(1, 0, 0, 0)));
    EXPECT_TRUE(e.contains(mat2(0, 0, 0, 1)));
    EXPECT_GE(1.0 / std::sqrt(e.volume()), 0.45);
}

TEST(Witness, ZeroSet)
{
    Lemma132Witness w = lemma132_witness(MatrixSet::singleton(Matrix::Zero(2, 2)));
    EXPECT_EQ(w.value, 0.0);
    EXPECT_EQ(w.ratio, 0.0);
    EXPECT_TRUE(w.members);
}

TEST(Hadamard, TuplesAndBall)
{
    std::vector<Vector> flat{Vector{0, 0, 0, 0}, Vector{1, 0, 0, 0}, Vector{0, 1, 0, 0}, Vector{1, 1, 0, 0},
                             Vector{0, 0, 1, 0}};
    HadamardTuple h = hadamard_tuple(flat);
    EXPECT_EQ(h.volume, 0.0);
    EXPECT_GT(h.product, 0.0);

    const double r = 0.7;
    HadamardReport rep = hadamard_simplex_bound(MatrixSet::ball(2, r), 10000, 3);
    EXPECT_EQ(rep.violations, 0u);
    EXPECT_TRUE(rep.pass);
    EXPECT_LE(rep.max_volume, std::pow(2 * r, 4));
    EXPECT_NEAR(rep.sup, r * r / 2, 1e-4);
    EXPECT_GT(rep.max_ratio, 0.0);
    EXPECT_THROW(hadamard_simplex_bound(MatrixSet::ball(3, 1.0), 10, 0), UnsupportedError);
}

TEST(Premultiply, RotationAndDiagonal)
{
    Gen g(43);
    MatrixSet e = random_matrix_polytope(g, 9);
    double th = 0.7;
    PremultiplyReport rot = premultiply_invariance_check(e, mat2(std::cos(th), -std::sin(th), std::sin(th), std::cos(th)));
    EXPECT_TRUE(rot.pass);
    EXPECT_NEAR(rot.sup_transformed, rot.sup, 1e-9);
    EXPECT_NEAR(rot.volume_transformed, rot.volume, 1e-9);
    PremultiplyReport dg = premultiply_invariance_check(e, mat2(2, 0, 0, 1));
    EXPECT_TRUE(dg.pass);
    EXPECT_NEAR(dg.sup_transformed, 2 * dg.sup, 1e-9);
    EXPECT_NEAR(dg.volume_transformed, 4 * dg.volume, 1e-9);
    EXPECT_THROW(premultiply_invariance_check(e, mat2(1, 2, 2, 4)), PreconditionError);
}

TEST(Premultiply, RandomPolytopesVertexMode)
{
    Gen g(47);
    for (int t = 0; t < 10; ++t)
    {
        MatrixSet e = random_matrix_polytope(g, 8);
        Matrix tm = g.matrix(2);
        if (std::abs(tm.determinant()) < 0.1)
            continue;
        PremultiplyReport r = premultiply_invariance_check(e, tm);
        EXPECT_TRUE(r.vertex_mode);
        EXPECT_TRUE(r.pass);
        EXPECT_LE(r.sup_error, 1e-9);
        EXPECT_LE(r.volume_error, 1e-9);
    }
}

TEST(Premultiply, GridAndEllipsoid)
{
    MatrixSet ball = MatrixSet::ball(2, 1.0);
    PremultiplyReport el = premultiply_invariance_check(ball, mat2(2, 0, 0, 1));
    EXPECT_TRUE(el.pass);
    EXPECT_NEAR(el.sup_transformed, 1.0, 1e-5);
    GridFrame f = GridFrame::symmetric(4, 1.0, 0.125);
    MatrixSet grid(2, rasterize(Ball{Vector(4), 1.0}, f));
    PremultiplyReport gr = premultiply_invariance_check(grid, mat2(1.5, 0.3, 0, 1));
    EXPECT_TRUE(gr.pass) << to_json(gr).dump();
}

TEST(ConstantsDb, AppendLoadMax)
{
    std::string path = ::testing::TempDir() + "symineq_constants_test.jsonl";
    std::remove(path.c_str());
    ConstantsDb db(path);
    Json inst{{"set", "ball"}, {"r", 1}};
    std::string h = instance_hash(inst);
    EXPECT_EQ(h.size(), 16u);
    EXPECT_EQ(h, instance_hash(Json::parse(inst.dump())));
    EXPECT_NE(h, instance_hash(Json{{"set", "ball"}, {"r", 2}}));
    db.append({"main-3.1", h, 0.8, false, 1});
    db.append({"main-3.1", h, 1.2, false, 2});
    db.append({"main-3.1", h, INFINITY, false, 3});
    db.append({"corollaryB-3.25", h, 4.0, true, 1});
    std::vector<ConstantRecord> all = db.load();
    ASSERT_EQ(all.size(), 4u);
    EXPECT_TRUE(std::isinf(all[2].ratio));
    EXPECT_DOUBLE_EQ(*db.max_ratio("main-3.1"), 1.2);
    EXPECT_FALSE(db.max_ratio("nothing").has_value());
    std::remove(path.c_str());
}

TEST(MatrixSetJson, RoundTrip)
{
    Gen g(53);
    MatrixSet e = random_matrix_polytope(g, 5);
    MatrixSet back = matrix_set_from_json(to_json(e));
    EXPECT_NEAR(vertex_scan_abs_det(std::get<Polytope>(back.rep()), 2),
                vertex_scan_abs_det(std::get<Polytope>(e.rep()), 2), 1e-15);
    MatrixSet b = matrix_set_from_json(to_json(MatrixSet::ball(2, 2.0)));
    EXPECT_NEAR(mat_sup_abs_det(b).value, 2.0, 1e-4);
    EXPECT_THROW(matrix_set_from_json(Json{{"type", "matrix_set"}, {"n", 5}}), std::exception);
}
