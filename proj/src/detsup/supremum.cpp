#include "symineq/detsup/supremum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symineq/geomcore/discretize.hpp"
#include "symineq/geomcore/error.hpp"
#include "symineq/geomcore/linalg.hpp"
#include "symineq/geomcore/parallel.hpp"
#include "symineq/geomcore/sampling.hpp"

namespace symineq
{
std::string method_name(SupMethod m)
{
    return m == SupMethod::ExhaustiveVertices ? "exhaustive-vertices" : "multistart-local";
}

namespace
{
std::vector<Vector> grid_candidates(const GridSet& g)
{
    if (g.empty())
        throw DegenerateError("determinant supremum: empty grid set");
    // only the end cells of each axis-0 line can be extreme
    const GridFrame& f = g.frame();
    std::vector<Vector> ends;
    int64_t line = -1, last = -1;
    g.for_each_occupied([&](int64_t i) {
        int64_t l = i / f.shape[0];
        if (l != line)
        {
            if (last >= 0)
                ends.push_back(f.center(last));
            ends.push_back(f.center(i));
            line = l;
        }
        last = i;
    });
    ends.push_back(f.center(last));
    return Polytope::hull_of(ends).vertices();
}

int ball_count(int dim, const SupOptions& opt)
{
    return dim == 2 ? opt.ball_vertices_2d : dim == 3 ? opt.ball_vertices_3d : opt.ball_vertices_4d;
}
}  // namespace

std::vector<Vector> extreme_candidates(const Region& e, const SupOptions& opt, double* slack)
{
    if (slack)
        *slack = 0;
    if (const auto* p = std::get_if<Polytope>(&e))
    {
        if (p->size() == 0)
            throw DegenerateError("determinant supremum: empty polytope");
        return p->vertices();
    }
    if (const auto* g = std::get_if<GridSet>(&e))
        return grid_candidates(*g);
    const Shell& s = std::get<Shell>(e);
    require(norm(s.center) == 0, "determinant supremum: shells must be origin-centred");
    if (!(s.outer > 0))
        return {Vector(s.dim())};
    const int d = s.dim();
    Polytope b = discretized_ball(d, s.outer, ball_count(d, opt));
    if (slack && d > 1)
        *slack = 1.0 / inradius_ratio(b, Vector(d), s.outer) - 1.0;
    return b.vertices();
}

namespace
{
struct Problem
{
    int n = 0, l = 0;
    std::vector<std::vector<Vector>> cand;
    // contrib[i][c·n² + r·n + k] = y_c[r]·a_ik
    std::vector<std::vector<double>> contrib;
    bool symmetric = false;
};

Problem build(std::span<const Region> sets, const CoefficientMatrix& a, bool symmetric_form, const SupOptions& opt,
              double& slack)
{
    Problem p;
    p.l = a.rows();
    p.n = a.cols();
    require(static_cast<int>(sets.size()) == p.l, "determinant supremum: wrong number of sets");
    require(p.n <= kMaxSetDim, "determinant supremum: dimension above 4");
    double factor = 1;
    for (const Region& e : sets)
    {
        require(region_dim(e) == p.n, "determinant supremum: dimension mismatch");
        double s = 0;
        p.cand.push_back(extreme_candidates(e, opt, &s));
        factor *= 1 + s;
    }
    slack = factor - 1;
    const int nn = p.n * p.n;
    p.contrib.resize(p.l);
    for (int i = 0; i < p.l; ++i)
    {
        auto& c = p.contrib[i];
        c.assign(p.cand[i].size() * nn, 0.0);
        for (std::size_t j = 0; j < p.cand[i].size(); ++j)
            for (int r = 0; r < p.n; ++r)
                for (int k = 0; k < p.n; ++k)
                    c[j * nn + r * p.n + k] = p.cand[i][j][r] * a(i, k);
    }
    p.symmetric = symmetric_form;
    for (int i = 1; i < p.l && p.symmetric; ++i)
        p.symmetric = p.cand[i] == p.cand[0];
    return p;
}

double tuple_count(const Problem& p)
{
    if (p.symmetric)
    {
        // strictly increasing index tuples; repeated points give 0 for both symmetric forms
        double m = static_cast<double>(p.cand[0].size()), c = 1;
        for (int i = 0; i < p.l; ++i)
            c *= (m - i) / (i + 1);
        return std::max(c, 1.0);
    }
    double c = 1;
    for (const auto& v : p.cand)
        c *= static_cast<double>(v.size());
    return c;
}

struct Best
{
    double value = -1;
    std::vector<int> idx;
    uint64_t evals = 0;
};

Best exhaustive(const Problem& p)
{
    const int l = p.l, n = p.n, nn = n * n;
    const std::size_t first = p.cand[0].size();
    std::vector<Best> part(first);
    parallel_for(first, [&](std::size_t i0) {
        Best b;
        std::vector<int> idx(l);
        std::vector<double> acc((l + 1) * nn, 0.0);
        idx[0] = static_cast<int>(i0);
        std::copy_n(&p.contrib[0][i0 * nn], nn, &acc[nn]);
        if (l == 1)
        {
            b.value = std::abs(det_small(&acc[nn], n));
            b.idx = idx;
            b.evals = 1;
            part[i0] = b;
            return;
        }
        // depth-first over the remaining arguments with running partial sums
        auto rec = [&](auto&& self, int depth) -> void {
            const auto& c = p.contrib[depth];
            const int size = static_cast<int>(p.cand[depth].size());
            const int start = p.symmetric ? idx[depth - 1] + 1 : 0;
            double* prev = &acc[depth * nn];
            double* cur = &acc[(depth + 1) * nn];
            for (int j = start; j < size; ++j)
            {
                const double* cj = &c[static_cast<std::size_t>(j) * nn];
                for (int q = 0; q < nn; ++q)
                    cur[q] = prev[q] + cj[q];
                idx[depth] = j;
                if (depth + 1 == l)
                {
                    double v = std::abs(det_small(cur, n));
                    ++b.evals;
                    if (v > b.value)
                    {
                        b.value = v;
                        b.idx = idx;
                    }
                }
                else
                    self(self, depth + 1);
            }
        };
        rec(rec, 1);
        part[i0] = std::move(b);
    });
    Best out;
    for (auto& b : part)
    {
        out.evals += b.evals;
        if (b.value > out.value)
        {
            out.value = b.value;
            out.idx = b.idx;
        }
    }
    return out;
}

double evaluate(const Problem& p, const std::vector<int>& idx)
{
    const int nn = p.n * p.n;
    double m[kMaxSetDim * kMaxSetDim] = {};
    for (int i = 0; i < p.l; ++i)
    {
        const double* c = &p.contrib[i][static_cast<std::size_t>(idx[i]) * nn];
        for (int q = 0; q < nn; ++q)
            m[q] += c[q];
    }
    return std::abs(det_small(m, p.n));
}

// Coordinate ascent: each argument in turn jumps to its best candidate, which is the exact
// maximum over that argument since the functional is |affine| in it.
Best ascend(const Problem& p, std::vector<int> idx)
{
    const int nn = p.n * p.n;
    Best b;
    b.value = evaluate(p, idx);
    for (int sweep = 0; sweep < 200; ++sweep)
    {
        bool moved = false;
        for (int i = 0; i < p.l; ++i)
        {
            double rest[kMaxSetDim * kMaxSetDim] = {};
            for (int j = 0; j < p.l; ++j)
            {
                if (j == i)
                    continue;
                const double* c = &p.contrib[j][static_cast<std::size_t>(idx[j]) * nn];
                for (int q = 0; q < nn; ++q)
                    rest[q] += c[q];
            }
            int arg = idx[i];
            double best = b.value;
            const auto& c = p.contrib[i];
            double m[kMaxSetDim * kMaxSetDim];
            for (std::size_t j = 0; j < p.cand[i].size(); ++j)
            {
                for (int q = 0; q < nn; ++q)
                    m[q] = rest[q] + c[j * nn + q];
                double v = std::abs(det_small(m, p.n));
                ++b.evals;
                if (v > best * (1 + 1e-14) && v > best)
                {
                    best = v;
                    arg = static_cast<int>(j);
                }
            }
            if (arg != idx[i])
            {
                idx[i] = arg;
                b.value = best;
                moved = true;
            }
        }
        if (!moved)
            break;
    }
    b.idx = std::move(idx);
    return b;
}

Best multistart(const Problem& p, const SupOptions& opt)
{
    const int restarts = std::max(1, opt.restarts);
    CounterRng rng(opt.seed, 0xde75u);
    std::vector<Best> runs(restarts);
    parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t r) {
        std::vector<int> idx(p.l);
        for (int i = 0; i < p.l; ++i)
        {
            auto m = p.cand[i].size();
            idx[i] = static_cast<int>(std::min<std::size_t>(m - 1, static_cast<std::size_t>(rng.uniform(r, i) * m)));
        }
        runs[r] = ascend(p, std::move(idx));
    });
    Best out;
    for (auto& b : runs)
    {
        out.evals += b.evals;
        if (b.value > out.value)
        {
            out.value = b.value;
            out.idx = b.idx;
        }
    }
    return out;
}

double signed_det(std::span<const Vector> y, const CoefficientMatrix& a)
{
    const int l = a.rows(), n = a.cols();
    double m[kMaxSetDim * kMaxSetDim] = {};
    for (int i = 0; i < l; ++i)
        for (int k = 0; k < n; ++k)
            for (int r = 0; r < n; ++r)
                m[r * n + k] += a(i, k) * y[i][r];
    return det_small(m, n);
}

// Coordinate ascent where shell arguments range over the whole ball B(0, R): the
// functional is c + g·y in each argument, maximized over the ball at y = ±R g/|g|.
// Polytope and grid arguments keep ranging over their candidates.
double refine_on_balls(std::vector<Vector>& y, const std::vector<double>& radius, const Problem& p,
                       const CoefficientMatrix& a, uint64_t& evals)
{
    double cur = std::abs(signed_det(y, a));
    for (int sweep = 0; sweep < 1000; ++sweep)
    {
        bool moved = false;
        for (int i = 0; i < p.l; ++i)
        {
            Vector keep = y[i];
            double best = cur;
            Vector arg = keep;
            if (radius[i] > 0)
            {
                y[i] = Vector(p.n);
                double c = signed_det(y, a);
                Vector g(p.n);
                for (int r = 0; r < p.n; ++r)
                {
                    y[i] = Vector::unit(p.n, r);
                    g[r] = signed_det(y, a) - c;
                }
                evals += p.n + 1;
                double gn = norm(g);
                if (gn > 0)
                {
                    Vector cand = g * ((c < 0 ? -1.0 : 1.0) * radius[i] / gn);
                    y[i] = cand;
                    double v = std::abs(signed_det(y, a));
                    if (v > best * (1 + 1e-15))
                    {
                        best = v;
                        arg = cand;
                    }
                }
            }
            else
            {
                for (const Vector& cand : p.cand[i])
                {
                    y[i] = cand;
                    double v = std::abs(signed_det(y, a));
                    ++evals;
                    if (v > best * (1 + 1e-15))
                    {
                        best = v;
                        arg = cand;
                    }
                }
            }
            y[i] = arg;
            if (best > cur)
            {
                cur = best;
                moved = true;
            }
        }
        if (!moved)
            break;
    }
    return cur;
}

bool all_polytopes(std::span<const Region> sets)
{
    for (const Region& e : sets)
        if (!std::holds_alternative<Polytope>(e))
            return false;
    return true;
}

DetSupResult solve(std::span<const Region> sets, const CoefficientMatrix& a, bool symmetric_form, const SupOptions& opt)
{
    require(!sets.empty(), "determinant supremum: no sets");
    DetSupResult r;
    Problem p = build(sets, a, symmetric_form, opt, r.slack);
    bool grids = false;
    for (const Region& e : sets)
        grids = grids || std::holds_alternative<GridSet>(e);
    Best b;
    if (!grids && tuple_count(p) <= static_cast<double>(opt.exhaustive_budget))
    {
        b = exhaustive(p);
        r.method = SupMethod::ExhaustiveVertices;
        r.certificate = all_polytopes(sets);
    }
    else
    {
        b = multistart(p, opt);
        r.method = SupMethod::MultistartLocal;
        r.certificate = false;
    }
    r.evaluations = b.evals;
    if (b.idx.empty())
        b.idx.assign(p.l, 0);
    for (int i = 0; i < p.l; ++i)
        r.argmax.push_back(p.cand[i][b.idx[i]]);
    std::vector<double> radius(p.l, 0.0);
    bool shells = false;
    for (int i = 0; i < p.l; ++i)
        if (const auto* sh = std::get_if<Shell>(&sets[i]); sh && sh->dim() > 1)
        {
            radius[i] = sh->outer;
            shells = true;
        }
    if (shells)
        refine_on_balls(r.argmax, radius, p, a, r.evaluations);
    r.value = linear_det(r.argmax, a);
    return r;
}
}  // namespace

DetSupResult sup_det_origin(std::span<const Region> sets, const SupOptions& opt)
{
    require(!sets.empty(), "sup_det_origin: no sets");
    const int n = region_dim(sets[0]);
    require(static_cast<int>(sets.size()) == n, "sup_det_origin: need n sets in R^n");
    return solve(sets, CoefficientMatrix::identity(n), true, opt);
}

DetSupResult sup_det_simplex(std::span<const Region> sets, const SupOptions& opt)
{
    require(!sets.empty(), "sup_det_simplex: no sets");
    const int n = region_dim(sets[0]);
    require(static_cast<int>(sets.size()) == n + 1, "sup_det_simplex: need n+1 sets in R^n");
    return solve(sets, CoefficientMatrix::simplex(n), true, opt);
}

DetSupResult sup_det_linear(std::span<const Region> sets, const CoefficientMatrix& a, const SupOptions& opt)
{
    require(static_cast<int>(sets.size()) == a.rows(), "sup_det_linear: need one set per coefficient row");
    for (const Region& e : sets)
        require(region_dim(e) == a.cols(), "sup_det_linear: dimension mismatch");
    return solve(sets, a, false, opt);
}

DetSupResult sup_det_origin(const Region& e, const SupOptions& opt)
{
    std::vector<Region> s(region_dim(e), e);
    return sup_det_origin(s, opt);
}

DetSupResult sup_det_simplex(const Region& e, const SupOptions& opt)
{
    std::vector<Region> s(region_dim(e) + 1, e);
    return sup_det_simplex(s, opt);
}

double ball_origin_sup(std::span<const double> radii)
{
    double v = 1;
    for (double r : radii)
        v *= r;
    return v;
}

double ball_simplex_sup(int n, double r)
{
    require(n >= 1, "ball_simplex_sup: bad dimension");
    return std::pow(r, n) * std::pow(n + 1.0, 0.5 * (n + 1)) / std::pow(static_cast<double>(n), 0.5 * n);
}

double IntervalSet::measure() const
{
    auto v = pieces;
    std::sort(v.begin(), v.end());
    double total = 0, lo = 0, hi = -std::numeric_limits<double>::infinity();
    for (auto [a, b] : v)
    {
        require(a <= b, "interval with lower end above upper end");
        if (a > hi)
        {
            if (hi > lo)
                total += hi - lo;
            lo = a;
            hi = b;
        }
        else
            hi = std::max(hi, b);
    }
    if (hi > lo)
        total += hi - lo;
    return total;
}

double IntervalSet::lower() const
{
    require(!pieces.empty(), "empty interval set");
    double m = pieces[0].first;
    for (auto [a, b] : pieces)
        m = std::min(m, a);
    return m;
}

double IntervalSet::upper() const
{
    require(!pieces.empty(), "empty interval set");
    double m = pieces[0].second;
    for (auto [a, b] : pieces)
        m = std::max(m, b);
    return m;
}

double interval_sum_sup(std::span<const IntervalSet> sets, std::span<const double> a)
{
    require(sets.size() == a.size() && !sets.empty(), "interval_sum_sup: one coefficient per set");
    // the linear form peaks at an end point of each set
    double hi = 0, lo = 0;
    for (std::size_t j = 0; j < sets.size(); ++j)
    {
        double u = a[j] * sets[j].upper(), v = a[j] * sets[j].lower();
        hi += std::max(u, v);
        lo += std::min(u, v);
    }
    return std::max(std::abs(hi), std::abs(lo));
}

double interval_sum_sup_rearranged(std::span<const IntervalSet> sets, std::span<const double> a)
{
    require(sets.size() == a.size() && !sets.empty(), "interval_sum_sup: one coefficient per set");
    double s = 0;
    for (std::size_t j = 0; j < sets.size(); ++j)
        s += std::abs(a[j]) * sets[j].measure() / 2;
    return s;
}

Json to_json(const DetSupResult& r)
{
    Json args = Json::array();
    for (const Vector& v : r.argmax)
        args.push_back(vector_to_json(v));
    return Json{{"value", r.value},
                {"argmax", args},
                {"method", method_name(r.method)},
                {"certificate", r.certificate},
                {"slack", r.slack},
                {"evaluations", r.evaluations}};
}

}  // namespace symineq
