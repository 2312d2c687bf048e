#include "symineq/matinq/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "symineq/geomcore/distance.hpp"
#include "symineq/geomcore/error.hpp"
#include "symineq/geomcore/parallel.hpp"

namespace symineq
{
namespace
{
// (a, d) ∈ S: 1/N ≤ a ≤ N, 0 ≤ a·d ≤ 1
bool in_factor(double a, double d, double n_param)
{
    double ad = a * d;
    return a >= 1 / n_param && a <= n_param && ad >= 0 && ad <= 1;
}

Json nan_null(double v)
{
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}
}  // namespace

bool in_counterexample_set(const Vector& x, double n_param)
{
    require(x.dim() == 4, "counterexample membership: 2x2 matrices expected");
    // x = (a, c, b, d) for [[a, b], [c, d]]
    return in_factor(x[0], x[3], n_param) && in_factor(x[2], x[1], n_param);
}

CounterexampleReport nonconvex_counterexample(double n_param, const CounterexampleOptions& opt)
{
    if (!(n_param > 1) || !std::isfinite(n_param))
        throw PreconditionError("nonconvex_counterexample: N must exceed 1");
    require(opt.chart_cell > 0 && opt.direct_cell > 0 && opt.matrix_cell > 0, "nonconvex_counterexample: cells must be positive");
    CounterexampleReport r;
    r.n_param = n_param;
    r.log_n = std::log(n_param);
    r.volume_exact = std::pow(2 * r.log_n, 2);

    // chart (u, t) = (ln a, a·d) has unit Jacobian; cells are kept when their mapped
    // centre passes the membership test in (a, d)
    GridFrame chart = GridFrame::covering(Vector{-r.log_n, 0.0}, Vector{r.log_n, 1.0}, opt.chart_cell);
    double pmin = std::numeric_limits<double>::infinity(), pmax = -pmin;
    int64_t count = 0;
    for (int64_t i = 0; i < chart.cell_count(); ++i)
    {
        Vector c = chart.center(i);
        double a = std::exp(c[0]), d = c[1] / a;
        if (!in_factor(a, d, n_param))
            continue;
        ++count;
        pmin = std::min(pmin, a * d);
        pmax = std::max(pmax, a * d);
    }
    require(count > 0, "nonconvex_counterexample: chart grid is empty, cell too coarse");
    const double area = static_cast<double>(count) * chart.cell_volume();
    // both factors are the same set S, so |E| = |S|²
    r.volume = area * area;
    r.volume_rel_error = std::abs(r.volume - r.volume_exact) / r.volume_exact;
    // det = ad − bc with ad and bc ranging independently over the same centre values
    r.sup_grid = pmax - pmin;
    r.sup = r.sup_grid;

    CounterRng rng(opt.seed, 0xce);
    for (uint64_t i = 0; i < opt.samples; ++i)
    {
        double a = std::pow(n_param, 2 * rng.uniform(i, 0) - 1), d = rng.uniform(i, 1) / a;
        double b = std::pow(n_param, 2 * rng.uniform(i, 2) - 1), c = rng.uniform(i, 3) / b;
        Vector x{a, c, b, d};
        if (in_counterexample_set(x, n_param))
            r.sup = std::max(r.sup, std::abs(flat_det(x, 2)));
    }

    if (n_param <= opt.direct_max_n)
    {
        GridFrame f = GridFrame::covering(Vector{1 / n_param, 0.0}, Vector{n_param, n_param}, opt.direct_cell);
        GridSet s = GridSet::from_predicate(f, [&](const Vector& x) { return in_factor(x[0], x[1], n_param); });
        r.volume_direct = s.volume() * s.volume();

        Vector lo{1 / n_param, 0.0, 1 / n_param, 0.0}, hi{n_param, n_param, n_param, n_param};
        GridFrame f4 = GridFrame::covering(lo, hi, opt.matrix_cell);
        GridSet g = GridSet::from_predicate(f4, [&](const Vector& x) { return in_counterexample_set(x, n_param); });
        if (!g.empty())
        {
            MatSupOptions mo;
            mo.seed = opt.seed;
            mo.restarts = 16;
            r.sup_search = mat_sup_abs_det(MatrixSet(2, g), mo).value;
            r.sup = std::max(r.sup, r.sup_search);
        }
    }
    r.ratio = std::sqrt(r.volume) / r.sup;
    bool direct_ok = r.volume_direct < 0
                     || std::abs(r.volume_direct - r.volume_exact) <= opt.volume_tolerance * r.volume_exact;
    r.pass = r.sup <= 2 + 1e-9 && r.ratio >= r.log_n && r.volume_rel_error <= opt.volume_tolerance && direct_ok;
    return r;
}

PerturbedBallReport perturbed_ball_experiment(double delta, int lambda_steps, int directions, uint64_t seed)
{
    if (!(delta >= 0 && delta < 1.0 / 25))
        throw PreconditionError("perturbed_ball_experiment: delta must lie in [0, 1/25)");
    require(lambda_steps >= 1 && directions >= 100, "perturbed_ball_experiment: grid too small");
    PerturbedBallReport r;
    r.delta = delta;
    r.p = 1 / std::sqrt(1 - delta);
    r.volume_ball = MatrixSet::ball(2, 1.0).volume();
    const Vector p{0.0, 0.0, 0.0, r.p};

    MatSupOptions mo;
    mo.seed = seed;
    mo.restarts = 8;
    std::vector<double> searched(lambda_steps + 1, 0.0), sampled(lambda_steps + 1, 0.0);
    std::vector<Vector> dirs = direction_sequence(4, directions);
    parallel_for(searched.size(), [&](std::size_t i) {
        double lambda = static_cast<double>(i) / lambda_steps;
        Vector c = p * (1 - lambda);
        if (lambda > 0)
            searched[i] = mat_sup_abs_det(MatrixSet::ball(unflatten(c, 2), lambda), mo).value;
        else
            searched[i] = std::abs(flat_det(c, 2));
        // |det| is harmonic, so the sampled maximum over each ball sits on its sphere
        double best = 0;
        for (const Vector& u : dirs)
            best = std::max(best, std::abs(flat_det(c + u * lambda, 2)));
        sampled[i] = best;
    });
    for (int i = 0; i <= lambda_steps; ++i)
    {
        double v = std::max(searched[i], sampled[i]);
        if (v > r.sup)
        {
            r.sup = v;
            r.best_lambda = static_cast<double>(i) / lambda_steps;
        }
        r.sup_sampled = std::max(r.sup_sampled, sampled[i]);
    }
    r.ball_sup = searched[lambda_steps];
    r.pass = std::abs(r.sup - 0.5) <= 1e-3;
    return r;
}

CellSet::CellSet(int n, Vector origin, double cell, std::vector<int64_t> shape, std::vector<int64_t> occupied)
    : n_(n), origin_(std::move(origin)), cell_(cell), shape_(std::move(shape)), occupied_(std::move(occupied))
{
    if (n != 2 && n != 3)
        throw UnsupportedError("cell sets hold 2x2 or 3x3 matrices");
    require(origin_.dim() == n * n && static_cast<int>(shape_.size()) == n * n, "cell set: frame must have n^2 axes");
    require(cell > 0 && std::isfinite(cell), "cell set: cell must be positive");
    double total = 1;
    for (int64_t s : shape_)
    {
        require(s >= 1, "cell set: shape entries must be positive");
        total *= static_cast<double>(s);
    }
    if (total > static_cast<double>(kMaxFrameCells))
        throw UnsupportedError("cell set frame exceeds the 2^30 cell cap");
    if (occupied_.size() > kMaxOccupied)
        throw UnsupportedError("cell set holds too many occupied cells");
    std::sort(occupied_.begin(), occupied_.end());
    occupied_.erase(std::unique(occupied_.begin(), occupied_.end()), occupied_.end());
    if (!occupied_.empty())
        require(occupied_.front() >= 0 && occupied_.back() < static_cast<int64_t>(total), "cell set: index outside frame");
}

CellSet CellSet::from_grid(const GridSet& g)
{
    require(g.dim() == 4, "cell set from grid: 2x2 matrices (R^4) expected");
    const GridFrame& f = g.frame();
    return CellSet(2, f.origin, f.cell, std::vector<int64_t>(f.shape.begin(), f.shape.begin() + 4), g.occupied());
}

CellSet CellSet::column_product(std::span<const GridSet> columns)
{
    const int n = static_cast<int>(columns.size());
    require(n == 2 || n == 3, "column_product: 2 or 3 columns expected");
    const double cell = columns[0].cell();
    Vector origin(n * n);
    std::vector<int64_t> shape;
    double occupied = 1;
    for (int j = 0; j < n; ++j)
    {
        const GridFrame& f = columns[j].frame();
        require(f.dim == n, "column_product: each column set must live in R^n");
        require(std::abs(f.cell - cell) <= 1e-12 * cell, "column_product: columns must share one cell size");
        for (int r = 0; r < n; ++r)
        {
            origin[j * n + r] = f.origin[r];
            shape.push_back(f.shape[r]);
        }
        occupied *= static_cast<double>(columns[j].count());
    }
    if (occupied > static_cast<double>(kMaxOccupied))
        throw UnsupportedError("column_product: too many occupied cells");
    // column j is more significant than every earlier column
    std::vector<int64_t> cells{0};
    int64_t stride = 1;
    for (int j = 0; j < n; ++j)
    {
        std::vector<int64_t> lin = columns[j].occupied();
        std::vector<int64_t> next;
        next.reserve(cells.size() * lin.size());
        for (int64_t l : lin)
            for (int64_t c : cells)
                next.push_back(c + stride * l);
        cells = std::move(next);
        stride *= columns[j].frame().cell_count();
    }
    return CellSet(n, origin, cell, shape, std::move(cells));
}

double CellSet::volume() const
{
    return static_cast<double>(count()) * std::pow(cell_, n_ * n_);
}

SliceChain slicing_decomposition(const CellSet& e)
{
    if (e.count() == 0)
        throw PreconditionError("slicing_decomposition: empty set");
    const int n = e.n();
    SliceChain chain;
    chain.n = n;
    chain.cells = e.count();
    std::vector<int64_t> cur = e.occupied();
    chain.chain_product = 1;
    chain.holds = true;
    for (int k = 0; k + 2 <= n; ++k)
    {
        const int m = n - k;  // columns of F_k
        int64_t stride = 1;
        for (int a = 0; a < (m - 1) * n; ++a)
            stride *= e.shape()[a];
        std::vector<int64_t> prefix(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i)
            prefix[i] = cur[i] % stride;
        std::sort(prefix.begin(), prefix.end());
        SliceLevel lv;
        lv.level = k;
        lv.columns = m;
        lv.cells = static_cast<int64_t>(cur.size());
        std::vector<int64_t> next;
        int64_t best_prefix = -1;
        for (std::size_t i = 0; i < prefix.size();)
        {
            std::size_t j = i;
            while (j < prefix.size() && prefix[j] == prefix[i])
                ++j;
            auto run = static_cast<int64_t>(j - i);
            if (run > lv.fibre_cells)
            {
                lv.fibre_cells = run;
                best_prefix = prefix[i];
            }
            next.push_back(prefix[i]);
            i = j;
        }
        lv.v_cells = static_cast<int64_t>(next.size());
        int64_t rest = best_prefix;
        for (int a = 0; a < (m - 1) * n; ++a)
        {
            int64_t idx = rest % e.shape()[a];
            rest /= e.shape()[a];
            lv.x.push_back(e.origin()[a] + (static_cast<double>(idx) + 0.5) * e.cell());
        }
        lv.volume = static_cast<double>(lv.cells) * std::pow(e.cell(), m * n);
        lv.v_volume = static_cast<double>(lv.v_cells) * std::pow(e.cell(), (m - 1) * n);
        lv.fibre_volume = static_cast<double>(lv.fibre_cells) * std::pow(e.cell(), n);
        lv.holds = lv.cells <= lv.v_cells * lv.fibre_cells;
        chain.holds = chain.holds && lv.holds;
        chain.chain_product *= static_cast<long double>(lv.fibre_cells);
        chain.levels.push_back(lv);
        cur = std::move(next);
    }
    chain.chain_product *= static_cast<long double>(chain.levels.back().v_cells);
    chain.chain_holds = chain.chain_product >= static_cast<long double>(chain.cells);
    chain.holds = chain.holds && chain.chain_holds;
    return chain;
}

SliceChain slicing_decomposition(const MatrixSet& e)
{
    const auto* g = std::get_if<GridSet>(&e.rep());
    if (!g)
        throw PreconditionError("slicing_decomposition: grid representation required");
    if (g->empty())
        throw PreconditionError("slicing_decomposition: empty set");
    return slicing_decomposition(CellSet::from_grid(*g));
}

Lemma132Witness lemma132_witness(const MatrixSet& e, const MatSupOptions& opt)
{
    if (e.empty())
        throw PreconditionError("lemma132_witness: empty set");
    const int n = e.n();
    Lemma132Witness w;
    w.volume = e.volume();
    std::vector<MatrixSet> copies(n, e);
    DetSupResult seed = mat_sup_det_sum(copies, opt);

    auto evaluate = [n](const std::vector<Vector>& a, const std::vector<int>& s) {
        Vector m(n * n);
        for (int j = 0; j < n; ++j)
            if (s[j])
                m += a[j];
        return std::abs(flat_det(m, n));
    };
    // best tuple for k summands, searched once per k
    std::vector<std::vector<Vector>> by_k(n + 1);
    by_k[n] = seed.argmax;
    w.matrices = seed.argmax;
    w.signs.assign(n, 1);
    w.value = w.all_ones_value = evaluate(w.matrices, w.signs);
    w.patterns = 1;
    for (int mask = 1; mask < (1 << n) - 1; ++mask)
    {
        std::vector<int> s(n);
        int k = 0;
        for (int j = 0; j < n; ++j)
            k += s[j] = (mask >> j) & 1;
        ++w.patterns;
        std::vector<Vector> a = seed.argmax;
        double v = evaluate(a, s);
        if (by_k[k].empty())
        {
            std::vector<MatrixSet> part(k, e);
            by_k[k] = mat_sup_det_sum(part, opt).argmax;
        }
        std::vector<Vector> b = seed.argmax;
        for (int j = 0, t = 0; j < n; ++j)
            if (s[j])
                b[j] = by_k[k][t++];
        double vb = evaluate(b, s);
        if (vb > v)
        {
            v = vb;
            a = b;
        }
        if (v > w.value)
        {
            w.value = v;
            w.matrices = a;
            w.signs = s;
        }
    }
    w.value = evaluate(w.matrices, w.signs);
    w.members = std::all_of(w.matrices.begin(), w.matrices.end(), [&](const Vector& a) { return e.contains(a, 1e-7); });
    w.ratio = w.volume > 0 ? w.value / std::pow(w.volume, 1.0 / n) : 0.0;
    return w;
}

HadamardTuple hadamard_tuple(std::span<const Vector> tuple)
{
    require(tuple.size() == 5, "hadamard_tuple: five matrices A_0..A_4 expected");
    Matrix m(4, 4);
    HadamardTuple h;
    h.product = 1;
    for (int j = 1; j <= 4; ++j)
    {
        require(tuple[j].dim() == 4 && tuple[0].dim() == 4, "hadamard_tuple: 2x2 matrices expected");
        Vector d = tuple[j] - tuple[0];
        for (int k = 0; k < 4; ++k)
            m(k, j - 1) = d[k];
        h.product *= norm(d);
    }
    h.det = std::abs(m.determinant());
    h.volume = h.det / 24;
    return h;
}

HadamardReport hadamard_simplex_bound(const MatrixSet& e, uint64_t trials, uint64_t seed, const MatSupOptions& opt)
{
    if (e.n() != 2)
        throw UnsupportedError("hadamard_simplex_bound: simplex volumes in R^9 are not supported");
    require(trials >= 1, "hadamard_simplex_bound: need at least one trial");
    HadamardReport r;
    r.trials = trials;
    MatSupOptions so = opt;
    so.seed = seed;
    r.sup = mat_sup_abs_det(e, so).value;
    MatrixSampler s(e);
    CounterRng rng(seed, 0xada);
    std::vector<Vector> t(5);
    for (uint64_t i = 0; i < trials; ++i)
    {
        for (uint32_t j = 0; j < 5; ++j)
            t[j] = s.sample(rng, i, j * s.lanes());
        HadamardTuple h = hadamard_tuple(t);
        if (h.det > h.product * (1 + 1e-12))
            ++r.violations;
        r.max_volume = std::max(r.max_volume, h.volume);
        if (h.product > 0)
            r.max_hadamard_ratio = std::max(r.max_hadamard_ratio, h.det / h.product);
    }
    if (r.sup > 0)
        r.max_ratio = r.max_volume / (r.sup * r.sup);
    else
        r.max_ratio = r.max_volume > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    r.pass = r.violations == 0;
    return r;
}

namespace
{
// occupied cells with an axis neighbour outside the set
int64_t boundary_cells(const GridSet& g)
{
    const GridFrame& f = g.frame();
    int64_t count = 0, idx[kMaxSetDim];
    g.for_each_occupied([&](int64_t i) {
        f.unravel(i, idx);
        for (int k = 0; k < f.dim; ++k)
            for (int step : {-1, 1})
            {
                idx[k] += step;
                bool out = idx[k] < 0 || idx[k] >= f.shape[k] || !g.test(f.ravel(idx));
                idx[k] -= step;
                if (out)
                {
                    ++count;
                    return;
                }
            }
    });
    return count;
}

double grid_radius(const MatrixSet& e)
{
    return std::get<GridSet>(e.rep()).max_center_norm() + std::get<GridSet>(e.rep()).cell();
}
}  // namespace

PremultiplyReport premultiply_invariance_check(const MatrixSet& e, const Matrix& t, double cell, const MatSupOptions& opt)
{
    const int n = e.n();
    require(t.rows() == n && t.cols() == n, "premultiply_invariance_check: T must be n x n");
    PremultiplyReport r;
    r.det_t = t.determinant();
    double scale = std::max(1.0, std::pow(t.norm(), n));
    if (!(std::abs(r.det_t) > 1e-12 * scale))
        throw PreconditionError("premultiply_invariance_check: T is singular");
    MatrixSet te = e.premultiplied(t, cell);
    const double ad = std::abs(r.det_t);

    if (const auto* p = std::get_if<Polytope>(&e.rep()))
    {
        r.vertex_mode = true;
        r.sup = vertex_scan_abs_det(*p, n);
        r.sup_transformed = vertex_scan_abs_det(std::get<Polytope>(te.rep()), n);
        r.sup_expected = ad * r.sup;
        r.sup_tolerance = 1e-9 * std::max(1.0, r.sup_expected);
    }
    else
    {
        r.sup = mat_sup_abs_det(e, opt).value;
        r.sup_transformed = mat_sup_abs_det(te, opt).value;
        r.sup_expected = ad * r.sup;
        if (e.is_grid())
        {
            // cell-centre candidates move |det| by at most |A|·(half cell diagonal) for n = 2
            const double c0 = std::get<GridSet>(e.rep()).cell(), c1 = std::get<GridSet>(te.rep()).cell();
            r.sup_tolerance = ad * grid_radius(e) * c0 + grid_radius(te) * c1;
        }
        else
            r.sup_tolerance = 1e-6 * std::max(1.0, r.sup_expected);
    }
    r.sup_error = std::abs(r.sup_transformed - r.sup_expected);

    bool volume_ok = true;
    try
    {
        r.volume = e.volume();
        r.volume_transformed = te.volume();
        r.volume_expected = std::pow(ad, n) * r.volume;
        if (te.is_grid())
        {
            const GridSet& g = std::get<GridSet>(te.rep());
            r.volume_tolerance = r.volume_expected > 0
                                     ? 2.0 * static_cast<double>(boundary_cells(g)) * g.frame().cell_volume() / r.volume_expected
                                     : 0.0;
        }
        else
            r.volume_tolerance = 1e-9;
        r.volume_error = r.volume_expected > 0 ? std::abs(r.volume_transformed - r.volume_expected) / r.volume_expected
                                               : r.volume_transformed;
        volume_ok = r.volume_error <= r.volume_tolerance;
    }
    catch (const UnsupportedError&)
    {
        // ℝ⁹ polytope volumes are out of reach; only the supremum identity is checked
        r.volume = r.volume_transformed = r.volume_expected = std::numeric_limits<double>::quiet_NaN();
        r.volume_error = r.volume_tolerance = std::numeric_limits<double>::quiet_NaN();
    }
    r.pass = r.sup_error <= r.sup_tolerance && volume_ok;
    return r;
}

Json to_json(const CounterexampleReport& r)
{
    return Json{{"N", r.n_param},
                {"log_N", r.log_n},
                {"volume_exact", r.volume_exact},
                {"volume", r.volume},
                {"volume_rel_error", r.volume_rel_error},
                {"volume_direct", r.volume_direct < 0 ? Json(nullptr) : Json(r.volume_direct)},
                {"sup", r.sup},
                {"sup_grid", r.sup_grid},
                {"sup_search", r.sup_search < 0 ? Json(nullptr) : Json(r.sup_search)},
                {"sup_bound", 2.0},
                {"ratio", r.ratio},
                {"pass", r.pass}};
}

Json to_json(const PerturbedBallReport& r)
{
    return Json{{"delta", r.delta},     {"p", r.p},
                {"sup", r.sup},         {"sup_sampled", r.sup_sampled},
                {"best_lambda", r.best_lambda}, {"ball_sup", r.ball_sup},
                {"volume_ball", r.volume_ball}, {"pass", r.pass}};
}

Json to_json(const SliceChain& c)
{
    Json levels = Json::array();
    for (const SliceLevel& l : c.levels)
        levels.push_back(Json{{"level", l.level},
                              {"columns", l.columns},
                              {"cells", l.cells},
                              {"v_cells", l.v_cells},
                              {"fibre_cells", l.fibre_cells},
                              {"x", l.x},
                              {"volume", l.volume},
                              {"v_volume", l.v_volume},
                              {"fibre_volume", l.fibre_volume},
                              {"holds", l.holds}});
    return Json{{"n", c.n},
                {"cells", c.cells},
                {"levels", levels},
                {"chain_product", static_cast<double>(c.chain_product)},
                {"chain_holds", c.chain_holds},
                {"holds", c.holds}};
}

Json to_json(const Lemma132Witness& w)
{
    Json mats = Json::array();
    for (const Vector& a : w.matrices)
        mats.push_back(vector_to_json(a));
    return Json{{"matrices", mats},
                {"signs", w.signs},
                {"value", w.value},
                {"all_ones_value", w.all_ones_value},
                {"volume", w.volume},
                {"ratio", w.ratio},
                {"members", w.members},
                {"patterns", w.patterns}};
}

Json to_json(const HadamardReport& r)
{
    return Json{{"trials", r.trials},
                {"violations", r.violations},
                {"max_volume", r.max_volume},
                {"sup", r.sup},
                {"max_ratio", nan_null(r.max_ratio)},
                {"max_hadamard_ratio", r.max_hadamard_ratio},
                {"pass", r.pass}};
}

Json to_json(const PremultiplyReport& r)
{
    return Json{{"det_T", r.det_t},
                {"vertex_mode", r.vertex_mode},
                {"sup", r.sup},
                {"sup_transformed", r.sup_transformed},
                {"sup_expected", r.sup_expected},
                {"sup_error", r.sup_error},
                {"sup_tolerance", r.sup_tolerance},
                {"volume", nan_null(r.volume)},
                {"volume_transformed", nan_null(r.volume_transformed)},
                {"volume_expected", nan_null(r.volume_expected)},
                {"volume_error", nan_null(r.volume_error)},
                {"volume_tolerance", nan_null(r.volume_tolerance)},
                {"pass", r.pass}};
}

}  // namespace symineq
