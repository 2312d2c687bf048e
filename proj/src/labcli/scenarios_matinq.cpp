#include <algorithm>
#include <cmath>
#include <numbers>

#include "scenario_support.hpp"
#include "symineq/geomcore/ball.hpp"
#include "symineq/matinq/experiments.hpp"

namespace symineq::lab
{
namespace
{
// sup |det| over the Frobenius ball of radius R in n×n matrices is (R/√n)^n
double ball_sup(int n, double radius)
{
    return std::pow(radius / std::sqrt(static_cast<double>(n)), n);
}

GridSet random_grid(Ctx& c, int d, int max_side, double cell)
{
    Vector origin = c.gen.in_box(d, -1, 1);
    std::vector<int64_t> shape(d);
    for (int k = 0; k < d; ++k)
        shape[k] = c.gen.integer(2, max_side);
    GridFrame f(origin, cell, shape);
    const double density = c.gen.uniform(0.2, 0.8);
    const int64_t cells = f.cell_count();
    std::vector<uint64_t> words(static_cast<std::size_t>((cells + 63) / 64), 0);
    int64_t used = 0;
    for (int64_t i = 0; i < cells; ++i)
        if (c.gen.uniform() < density)
        {
            words[i / 64] |= uint64_t{1} << (i % 64);
            ++used;
        }
    if (used == 0)
        words[0] |= 1;
    return GridSet(f, std::move(words));
}

MatrixSet random_box_set(Ctx& c)
{
    Vector lo = c.gen.in_box(4, -1, 1), hi = lo;
    for (int k = 0; k < 4; ++k)
        hi[k] += c.gen.uniform(0.2, 1.5);
    return MatrixSet(2, box(lo, hi));
}

MatrixSet axis_ellipsoid(const Vector& semi_axes)
{
    Matrix axes = Matrix::Zero(semi_axes.dim(), semi_axes.dim());
    for (int k = 0; k < semi_axes.dim(); ++k)
        axes(k, k) = semi_axes[k];
    return MatrixSet(2, Ellipsoid(Vector(semi_axes.dim()), axes));
}

Json ratio_row(const RatioReport& r)
{
    return {{"volumes", r.volumes}, {"lhs", r.lhs}, {"sup", r.sup},
            {"ratio", r.infinite ? Json() : Json(r.ratio)}, {"infinite", r.infinite}};
}
}  // namespace

ScenarioResult main_31(Ctx& c)
{
    MatSupOptions mo = c.mat_options();
    const double ball_rel = c.tol("ball_rel", 1e-4);
    const double scale_rel = c.tol("scale_rel", 1e-6);
    const int count = c.instances(8);
    ScenarioResult out;
    out.pass = true;
    double max_ratio = 0;
    auto account = [&](const std::string& kind, const std::vector<MatrixSet>& sets, const RatioReport& r) {
        Json inst = Json::array();
        for (const MatrixSet& e : sets)
            inst.push_back(to_json(e));
        if (r.infinite)
            out.pass = false;
        else
            max_ratio = std::max(max_ratio, r.ratio);
        c.record(kind, inst, r.infinite ? std::numeric_limits<double>::infinity() : r.ratio, r.certificate);
    };

    // balls: the Minkowski sum of n radius-r balls is the radius-nr ball
    Json balls = Json::array();
    for (int n : c.int_list("ball_n", {2, 3}))
    {
        const double r = 0.5;
        std::vector<MatrixSet> sets(n, MatrixSet::ball(n, r));
        RatioReport rep = theorem31_ratio(sets, mo);
        double closed = std::pow(MatrixSet::ball(n, r).volume(), 1.0 / n) / ball_sup(n, n * r);
        bool ok = close_rel(rep.ratio, closed, ball_rel) && close_rel(rep.sup, ball_sup(n, n * r), ball_rel);
        out.pass = out.pass && ok;
        account("ball", sets, rep);
        balls.push_back({{"n", n}, {"radius", r}, {"report", ratio_row(rep)}, {"closed_form", closed}, {"pass", ok}});
        out.payload["constants"]["ball_ratio_n" + std::to_string(n)] = rep.ratio;
    }

    Json boxes = Json::array(), polys = Json::array();
    std::vector<MatrixSet> first_boxes;
    for (int t = 0; t < count; ++t)
    {
        std::vector<MatrixSet> b{random_box_set(c), random_box_set(c)};
        RatioReport rb = theorem31_ratio(b, mo);
        account("box", b, rb);
        boxes.push_back(ratio_row(rb));
        if (t == 0)
            first_boxes = b;
        std::vector<MatrixSet> p{MatrixSet(2, c.gen.polytope(4, 10, 1.0, 0.5)),
                                 MatrixSet(2, c.gen.polytope(4, 10, 1.0, 0.5))};
        RatioReport rp = theorem31_ratio(p, mo);
        account("polytope", p, rp);
        polys.push_back(ratio_row(rp));
    }

    // both sides are homogeneous of degree n under E_j -> sE_j
    const double s = c.cfg.param<double>("scale", 2.5);
    std::vector<MatrixSet> scaled{first_boxes[0].scaled(s), first_boxes[1].scaled(s)};
    RatioReport r0 = theorem31_ratio(first_boxes, mo), r1 = theorem31_ratio(scaled, mo);
    bool scale_ok = close_rel(r1.ratio, r0.ratio, scale_rel);
    out.pass = out.pass && scale_ok;

    // column slicing on random grid sets, n = 2 and n = 3
    const int slices = c.cfg.param<int>("slicing_instances", 20);
    int slice_fail = 0;
    Json chains = Json::array();
    for (int t = 0; t < slices; ++t)
    {
        MatrixSet g(2, random_grid(c, 4, 5, 0.25));
        SliceChain ch = slicing_decomposition(g);
        slice_fail += !ch.holds;
        if (t < 3)
            chains.push_back(to_json(ch));
    }
    for (int t = 0; t < 3; ++t)
    {
        std::vector<GridSet> cols{random_grid(c, 3, 4, 0.5), random_grid(c, 3, 4, 0.5), random_grid(c, 3, 4, 0.5)};
        SliceChain ch = slicing_decomposition(CellSet::column_product(cols));
        slice_fail += !ch.holds;
        if (t == 0)
            chains.push_back(to_json(ch));
    }
    out.pass = out.pass && slice_fail == 0;

    out.payload["balls"] = balls;
    out.payload["boxes"] = boxes;
    out.payload["polytopes"] = polys;
    out.payload["scaling"] = {{"factor", s}, {"ratio", r0.ratio}, {"scaled_ratio", r1.ratio}, {"pass", scale_ok}};
    out.payload["slicing"] = {{"instances", slices + 3}, {"failures", slice_fail}, {"examples", chains}};
    out.payload["constants"]["max_ratio"] = max_ratio;
    return out;
}

ScenarioResult corollary_a(Ctx& c)
{
    MatSupOptions mo = c.mat_options();
    const double cross_rel = c.tol("cross_rel", 1e-6);
    const double reduction_rel = c.tol("reduction_rel", 1e-3);
    const double ball_rel = c.tol("ball_rel", 1e-4);
    std::vector<std::pair<std::string, MatrixSet>> sets{{"ball", MatrixSet::ball(2, 1.0)},
                                                        {"box", random_box_set(c)},
                                                        {"polytope", MatrixSet(2, c.gen.polytope(4, 10, 1.0, 0.5))}};
    const std::vector<std::vector<double>> lambdas{{1, 1}, {0.5, 2}, {0.5, 0.5}, {1.5, 0.25}};
    ScenarioResult out;
    out.pass = true;
    Json rows = Json::array();
    double max_ratio = 0;
    for (const auto& [name, e] : sets)
    {
        RatioReport b = corollary_b_ratio(e, mo);
        for (const auto& lam : lambdas)
        {
            RatioReport a = corollary_a_ratio(e, lam, mo);
            std::vector<MatrixSet> scaled{e.scaled(lam[0]), e.scaled(lam[1])};
            RatioReport t = theorem31_ratio(scaled, mo);
            bool ok = !a.infinite && close_rel(a.ratio, t.ratio, cross_rel);
            Json row = {{"set", name}, {"lambda", lam}, {"ratio", a.ratio}, {"theorem31_ratio", t.ratio}};
            if (name == "ball")
            {
                // Σλ_j B = (Σλ_j) B
                double sum = lam[0] + lam[1];
                double closed = lam[0] * lam[1] * std::sqrt(e.volume()) / ball_sup(2, sum);
                ok = ok && close_rel(a.ratio, closed, ball_rel);
                row["closed_form"] = closed;
            }
            if (lam[0] == 0.5 && lam[1] == 0.5)
            {
                // convexity: ½E + ½E = E, so ratio_B = n^n ratio_A(1/n)
                bool red = close_rel(4 * a.ratio, b.ratio, reduction_rel);
                ok = ok && red;
                row["corollary_b_ratio"] = b.ratio;
                row["reduction_holds"] = red;
            }
            row["pass"] = ok;
            out.pass = out.pass && ok;
            max_ratio = std::max(max_ratio, a.ratio);
            c.record(name, {{"set", to_json(e)}, {"lambda", lam}}, a.ratio, a.certificate);
            rows.push_back(row);
        }
    }
    out.payload["rows"] = rows;
    out.payload["constants"]["max_ratio"] = max_ratio;
    return out;
}

ScenarioResult corollary_b(Ctx& c)
{
    MatSupOptions mo = c.mat_options();
    const double ball_rel = c.tol("ball_rel", 1e-4);
    const double search_rel = c.tol("search_rel", 1e-4);
    const int count = c.instances(8);
    ScenarioResult out;
    out.pass = true;
    Json balls = Json::array();
    for (int n : c.int_list("ball_n", {2, 3}))
        for (double r : {0.5, 1.0})
        {
            MatrixSet b = MatrixSet::ball(n, r);
            RatioReport rep = corollary_b_ratio(b, mo);
            double closed = std::pow(b.volume(), 1.0 / n) / ball_sup(n, r);
            bool ok = close_rel(rep.ratio, closed, ball_rel);
            out.pass = out.pass && ok;
            balls.push_back({{"n", n}, {"radius", r}, {"ratio", rep.ratio}, {"closed_form", closed}, {"pass", ok}});
            out.payload["constants"]["ball_ratio_n" + std::to_string(n)] = rep.ratio;
        }
    const double ball_ratio = std::sqrt(MatrixSet::ball(2, 1.0).volume()) / ball_sup(2, 1.0);

    // axis ellipsoids: sup = max(l1 l4, l2 l3)/2 ≥ √(l1 l2 l3 l4)/2, so the ball ratio is not exceeded
    Json ells = Json::array();
    int ell_fail = 0;
    for (int t = 0; t < count; ++t)
    {
        Vector l = c.gen.in_box(4, 0.3, 2.0);
        MatrixSet e = axis_ellipsoid(l);
        RatioReport rep = corollary_b_ratio(e, mo);
        double closed_sup = std::max(l[0] * l[3], l[1] * l[2]) / 2;
        bool ok = close_rel(rep.sup, closed_sup, search_rel) && rep.ratio <= ball_ratio * (1 + search_rel);
        ell_fail += !ok;
        c.record("ellipsoid", to_json(e), rep.ratio, rep.certificate);
        ells.push_back({{"semi_axes", vector_to_json(l)}, {"sup", rep.sup}, {"closed_sup", closed_sup},
                        {"ratio", rep.ratio}, {"pass", ok}});
    }
    out.pass = out.pass && ell_fail == 0;

    Json polys = Json::array();
    double max_ratio = ball_ratio;
    for (int t = 0; t < count; ++t)
    {
        MatrixSet e = t % 2 ? random_box_set(c) : MatrixSet(2, c.gen.polytope(4, 10, 1.0, 0.5));
        RatioReport rep = corollary_b_ratio(e, mo);
        out.pass = out.pass && !rep.infinite;
        if (!rep.infinite)
            max_ratio = std::max(max_ratio, rep.ratio);
        c.record(t % 2 ? "box" : "polytope", to_json(e), rep.infinite ? INFINITY : rep.ratio, rep.certificate);
        polys.push_back(ratio_row(rep));
    }
    out.payload["balls"] = balls;
    out.payload["ellipsoids"] = ells;
    out.payload["polytopes"] = polys;
    out.payload["constants"]["max_ratio"] = max_ratio;
    return out;
}

ScenarioResult counterexample_22(Ctx& c)
{
    const std::vector<double> ns = c.real_list("N", {10, 100, 1000});
    CounterexampleOptions opt;
    opt.volume_tolerance = c.tol("volume_rel", 0.03);
    opt.samples = c.samples(opt.samples);
    opt.seed = c.cfg.seed;
    opt.chart_cell = c.cell(opt.chart_cell);
    ScenarioResult out;
    out.pass = true;
    Json rows = Json::array(), sweep = Json::array();
    double prev = -1;
    bool increasing = true;
    for (double n : ns)
    {
        CounterexampleReport r = nonconvex_counterexample(n, opt);
        out.pass = out.pass && r.pass;
        increasing = increasing && r.ratio > prev;
        prev = r.ratio;
        rows.push_back(to_json(r));
        sweep.push_back({{"x", r.log_n}, {"y", r.ratio}, {"N", n}});
        char key[48];
        std::snprintf(key, sizeof key, "ratio_N%g", n);
        out.payload["constants"][key] = r.ratio;
        c.record("ratio", {{"N", n}}, r.ratio, false);
    }
    out.pass = out.pass && increasing;
    out.payload["rows"] = rows;
    out.payload["increasing"] = increasing;
    out.payload["sweep"] = sweep;
    out.payload["x_label"] = "ln N";
    out.payload["y_label"] = "|E|^(1/2) / sup|det|";
    return out;
}

ScenarioResult example_32(Ctx& c)
{
    MatSupOptions mo = c.mat_options();
    const double ball_abs = c.tol("ball_abs", 1e-4);
    const double amgm_rel = c.tol("amgm_rel", 1e-6);
    ScenarioResult out;
    out.pass = true;
    Json balls = Json::array();
    for (double r : c.real_list("radii", {0.5, 1.0, 2.0}))
    {
        DetSupResult s = mat_sup_abs_det(MatrixSet::ball(2, r), mo);
        // absolute tolerance at r = 1, scaled with the degree-2 homogeneity
        bool ok = std::abs(s.value - r * r / 2) <= ball_abs * r * r;
        out.pass = out.pass && ok;
        balls.push_back({{"radius", r}, {"sup", s.value}, {"closed_form", r * r / 2}, {"pass", ok}});
    }
    // ellipsoids with the unit ball's volume
    Json ells = Json::array();
    const int count = c.instances(6);
    for (int t = 0; t < count; ++t)
    {
        Vector l = c.gen.in_box(4, 0.5, 2.0);
        double g = std::pow(l[0] * l[1] * l[2] * l[3], 0.25);
        l *= 1 / g;
        DetSupResult s = mat_sup_abs_det(axis_ellipsoid(l), mo);
        double amgm = (l[0] * l[3] + l[1] * l[2]) / 4;
        bool ok = s.value >= amgm * (1 - amgm_rel) && s.value >= 0.5 * (1 - amgm_rel);
        out.pass = out.pass && ok;
        ells.push_back({{"semi_axes", vector_to_json(l)}, {"sup", s.value}, {"amgm_bound", amgm}, {"pass", ok}});
    }
    Json perturbed = Json::array();
    for (double d : c.real_list("deltas", {0.03, 0.0}))
    {
        PerturbedBallReport r = perturbed_ball_experiment(d, 200, 20000, c.cfg.seed);
        out.pass = out.pass && r.pass;
        perturbed.push_back(to_json(r));
    }
    out.payload["balls"] = balls;
    out.payload["ellipsoids"] = ells;
    out.payload["perturbed"] = perturbed;
    return out;
}

ScenarioResult remark_33(Ctx& c)
{
    MatSupOptions mo = c.mat_options();
    const uint64_t trials = c.samples(10000);
    std::vector<std::pair<std::string, MatrixSet>> sets{{"ball", MatrixSet::ball(2, 0.7)},
                                                        {"polytope", MatrixSet(2, c.gen.polytope(4, 10, 1.0, 0.5))}};
    ScenarioResult out;
    out.pass = true;
    for (const auto& [name, e] : sets)
    {
        HadamardReport r = hadamard_simplex_bound(e, trials, c.cfg.seed, mo);
        out.pass = out.pass && r.pass && r.violations == 0;
        out.payload[name] = to_json(r);
        out.payload["constants"]["max_volume_over_sup2_" + name] = r.max_ratio;
        c.record(name, to_json(e), r.max_ratio, false);
    }
    return out;
}

ScenarioResult witness_132(Ctx& c)
{
    MatSupOptions mo = c.mat_options();
    const double min_ratio = c.tol("ball_ratio_min", 0.45);
    ScenarioResult out;
    Lemma132Witness ball = lemma132_witness(MatrixSet::ball(2, 1.0), mo);
    Lemma132Witness ball3 = lemma132_witness(MatrixSet::ball(3, 1.0), mo);
    Lemma132Witness zero = lemma132_witness(MatrixSet::singleton(Matrix::Zero(2, 2)), mo);
    Lemma132Witness poly = lemma132_witness(MatrixSet(2, c.gen.polytope(4, 10, 1.0, 0.5)), mo);
    out.pass = ball.members && ball.ratio >= min_ratio && ball3.members && ball3.ratio > 0 && zero.value == 0
               && zero.ratio == 0 && poly.members && poly.ratio > 0;
    out.payload["ball"] = to_json(ball);
    out.payload["ball_n3"] = to_json(ball3);
    out.payload["zero"] = to_json(zero);
    out.payload["polytope"] = to_json(poly);
    out.payload["constants"]["ball_ratio"] = ball.ratio;
    out.payload["constants"]["ball_ratio_n3"] = ball3.ratio;
    c.record("ball_ratio", {{"ball", 2}}, ball.ratio, false);
    return out;
}

}  // namespace symineq::lab
