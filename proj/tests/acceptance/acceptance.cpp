// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "../unit/gen.hpp"
#include "symineq/detsup/constants.hpp"
#include "symineq/geomcore/gridset.hpp"
#include "symineq/geomcore/region.hpp"
#include "symineq/labcli/scenarios.hpp"
#include "symineq/labcli/suite.hpp"
#include "symineq/matinq/experiments.hpp"
#include "symineq/matinq/search.hpp"
#include "symineq/rearrange/round_to_ball.hpp"

using namespace symineq;
using testgen::Gen;

namespace
{
int failures = 0;

struct Check
{
    bool ok = true;
    std::string detail;

    void need(bool cond, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
};

void Check::need(bool cond, const char* fmt, ...)
{
    if (cond)
        return;
    ok = false;
    char buf[256];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    if (!detail.empty())
        detail += "; ";
    detail += buf;
}

void criterion(int id, const char* what, double limit_s, const std::function<void(Check&)>& body)
{
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try
    {
        body(c);
    }
    catch (const std::exception& e)
    {
        c.ok = false;
        c.detail = std::string("exception: ") + e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > limit_s)
        c.need(false, "took %.1f s, limit %.0f s", dt, limit_s);
    std::printf("%s criterion %d: %s (%.2f s)%s%s\n", c.ok ? "PASS" : "FAIL", id, what, dt,
                c.detail.empty() ? "" : " -- ", c.detail.c_str());
    std::fflush(stdout);
    failures += !c.ok;
}

void scenario_must_pass(Check& c, const std::string& id, const Json& budgets, const Json& params = Json::object())
{
    ExperimentConfig cfg = default_config(id);
    Json j = to_json(cfg);
    if (!budgets.empty())
        j["budgets"] = budgets;
    if (!params.empty())
        j["params"] = params;
    Report r = run_scenario(config_from_json(j));
    c.need(r.outcome == Outcome::Pass, "%s: %s", id.c_str(), outcome_name(r.outcome).c_str());
}

GridSet random_grid4(Gen& g)
{
    const int64_t shape[4] = {5, 5, 5, 5};
    GridFrame f(Vector{-0.625, -0.625, -0.625, -0.625}, 0.25, shape);
    const double p = g.uniform(0.2, 0.8);
    return GridSet::from_predicate(f, [&](const Vector&) { return g.uniform() < p; });
}
}  // namespace

int main()
{
    criterion(1, "n = 1 constants equal (2, 1)", 1, [](Check& c) {
        ConstantsCheck k = verify_sharp_constants(1);
        c.need(std::abs(k.closed.A - 2) <= 1e-9 && std::abs(k.closed.B - 1) <= 1e-9, "closed (%.12g, %.12g)",
               k.closed.A, k.closed.B);
        c.need(std::abs(k.numeric.A - 2) <= 1e-9 && std::abs(k.numeric.B - 1) <= 1e-9, "numeric (%.12g, %.12g)",
               k.numeric.A, k.numeric.B);
    });

    criterion(2, "n = 2, 3 constants within 1% and B <= A <= (n+1)B", 30, [](Check& c) {
        for (int n : {2, 3})
        {
            ConstantsCheck k = verify_sharp_constants(n, 0.01);
            c.need(k.rel_err_A <= 0.01 && k.rel_err_B <= 0.01, "n=%d errors %.4g %.4g", n, k.rel_err_A, k.rel_err_B);
            c.need(k.relation_holds, "n=%d relation", n);
            c.need(k.numeric.B <= k.numeric.A && k.numeric.A <= (n + 1) * k.numeric.B, "n=%d numeric relation", n);
        }
    });

    criterion(3, "isodiametric and simplex bounds on 200 bodies, ball within 2%", 60, [](Check& c) {
        Json b = {{"instances", 200}};
        Json p = {{"dims", {2, 3}}};
        for (const char* id : {"iso-1.5", "iso-1.6", "simplexbound-1.10"})
            scenario_must_pass(c, id, b, p);
    });

    criterion(4, "lemmas 2.2 and 2.4, Steiner symmetrals and Macbeath on 100 bodies", 300, [](Check& c) {
        Json b = {{"instances", 100}};
        for (const char* id : {"lemma-2.2", "lemma-2.4", "theorem-2.3", "macbeath-1.11"})
            scenario_must_pass(c, id, b);
    });

    criterion(5, "functional bound on 50 step functions and the sublevel counterexample", 120, [](Check& c) {
        scenario_must_pass(c, "theorem-2.5", {{"instances", 50}});
        scenario_must_pass(c, "remark-2.6", Json::object());
    });

    criterion(6, "J and G comparisons on 30 instances with 1e5 samples", 300, [](Check& c) {
        Json b = {{"instances", 30}, {"samples", 100000}};
        scenario_must_pass(c, "theorem-2.7-J", b);
        scenario_must_pass(c, "theorem-2.7-G", b);
    });

    criterion(7, "matrix experiments", 600, [](Check& c) {
        for (double r : {0.5, 1.0, 2.0})
        {
            double v = mat_sup_abs_det(MatrixSet::ball(2, r)).value;
            c.need(std::abs(v - r * r / 2) <= 1e-4, "ball r=%g sup %.8g", r, v);
        }
        PerturbedBallReport pb = perturbed_ball_experiment(0.03);
        // the hull of the ball and P is strictly larger, yet its sup stays at the ball's 1/2
        c.need(pb.pass && std::abs(pb.ball_sup - 0.5) <= 1e-3, "perturbed ball sup %.6g, ball %.6g", pb.sup,
               pb.ball_sup);
        double prev = 0;
        for (double n : {10.0, 100.0, 1000.0})
        {
            CounterexampleReport r = nonconvex_counterexample(n);
            c.need(r.ratio >= std::log(n), "N=%g ratio %.4g < ln N", n, r.ratio);
            c.need(r.volume_rel_error <= 0.03, "N=%g volume error %.4g", n, r.volume_rel_error);
            c.need(r.ratio > prev, "N=%g ratio not increasing", n);
            prev = r.ratio;
        }
        Gen g(20261014);
        int slice_fail = 0;
        for (int t = 0; t < 20; ++t)
        {
            GridSet grid = random_grid4(g);
            if (grid.empty())
                continue;
            SliceChain ch = slicing_decomposition(CellSet::from_grid(grid));
            slice_fail += !ch.holds;
        }
        c.need(slice_fail == 0, "%d slicing failures", slice_fail);
        HadamardReport h = hadamard_simplex_bound(MatrixSet::ball(2, 0.7), 10000, 7);
        c.need(h.trials == 10000 && h.violations == 0 && h.pass, "hadamard violations %llu",
               static_cast<unsigned long long>(h.violations));
        Lemma132Witness w = lemma132_witness(MatrixSet::ball(2, 1.0));
        c.need(w.members && w.ratio >= 0.45, "witness ratio %.4g", w.ratio);
    });

    criterion(8, "greedy symmetrisation of 20 bodies at cell 1/128 within 50 steps", 300, [](Check& c) {
        Gen g(8128);
        RoundOptions ro;
        ro.max_iters = 50;
        ro.tol = 0.05;
        for (int t = 0; t < 20; ++t)
        {
            std::vector<Vector> pts = g.cloud(2, g.integer(4, 12));
            for (Vector& p : pts)
                p[0] = 0.3 + 1.5 * p[0];
            Polytope body = Polytope::hull_of(pts);
            if (body.volume() < 0.05)
            {
                --t;
                continue;
            }
            Vector lo, hi;
            region_bounds(Region(body), lo, hi);
            GridSet e = rasterize(body, GridFrame::covering(lo, hi, 1.0 / 128));
            SymmetrisationTrace tr = round_to_ball(e, ro);
            bool monotone = true;
            for (std::size_t i = 1; i < tr.steps.size(); ++i)
                monotone = monotone && tr.steps[i].symdiff <= tr.steps[i - 1].symdiff;
            double rel = tr.steps.back().symdiff / tr.volume;
            c.need(monotone, "body %d trace not monotone", t);
            c.need(rel <= 0.05 && static_cast<int>(tr.steps.size()) - 1 <= 50, "body %d symdiff %.4g after %zu steps",
                   t, rel, tr.steps.size() - 1);
        }
    });

    criterion(9, "default suite is byte-identical across runs and thread counts", 600, [](Check& c) {
        auto configs = load_config_dir(SYMINEQ_CONFIG_DIR);
        setenv("SYMINEQ_THREADS", "1", 1);
        SuiteSummary a = run_suite(configs);
        setenv("SYMINEQ_THREADS", "4", 1);
        SuiteSummary b = run_suite(configs);
        unsetenv("SYMINEQ_THREADS");
        std::string da = to_json(a).dump(), db = to_json(b).dump();
        c.need(da == db, "summaries differ");
        c.need(constants_csv(a) == constants_csv(b), "constant tables differ");
        c.need(a.all_pass(), "%d of %zu scenarios pass", a.passed, a.rows.size());
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
