#include "symineq/matinq/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "symineq/geomcore/error.hpp"
#include "symineq/geomcore/parallel.hpp"
#include "symineq/matinq/lp.hpp"

namespace symineq
{
double vertex_scan_abs_det(const Polytope& p, int n)
{
    double best = 0;
    for (const Vector& v : p.vertices())
        best = std::max(best, std::abs(flat_det(v, n)));
    return best;
}

namespace
{
// Per-set data that does not change during a search.
struct SetData
{
    const MatrixSet* set = nullptr;
    int n = 0, d = 0;
    // polytope
    Eigen::MatrixXd pts;
    // column-slice LP constraint matrices (other coordinates plus the weight sum)
    std::vector<Eigen::MatrixXd> slice_a;
    // ellipsoid: orthonormal null space of the rows fixing the other columns
    std::vector<Eigen::MatrixXd> null;
    // grid
    std::vector<int64_t> occupied;
};

SetData prepare(const MatrixSet& e)
{
    SetData s;
    s.set = &e;
    s.n = e.n();
    s.d = e.dim();
    const int n = s.n, d = s.d;
    if (const auto* p = std::get_if<Polytope>(&e.rep()))
    {
        s.pts.resize(d, static_cast<Eigen::Index>(p->size()));
        for (std::size_t j = 0; j < p->size(); ++j)
            for (int k = 0; k < d; ++k)
                s.pts(k, static_cast<Eigen::Index>(j)) = p->vertex(j)[k];
        for (int col = 0; col < n; ++col)
        {
            Eigen::MatrixXd a(d - n + 1, s.pts.cols());
            int row = 0;
            for (int k = 0; k < d; ++k)
                if (k / n != col)
                    a.row(row++) = s.pts.row(k);
            a.row(row).setOnes();
            s.slice_a.push_back(a);
        }
    }
    else if (const auto* g = std::get_if<GridSet>(&e.rep()))
    {
        s.occupied = g->occupied();
        if (s.occupied.empty())
            throw PreconditionError("matrix search: empty grid set");
    }
    else
    {
        const Matrix& l = std::get<Ellipsoid>(e.rep()).axes();
        for (int col = 0; col < n; ++col)
        {
            Eigen::MatrixXd lf(d - n, d);
            int row = 0;
            for (int k = 0; k < d; ++k)
                if (k / n != col)
                    lf.row(row++) = l.row(k);
            Eigen::MatrixXd ker = Eigen::FullPivLU<Eigen::MatrixXd>(lf).kernel();
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(ker);
            s.null.push_back(qr.householderQ() * Eigen::MatrixXd::Identity(d, ker.cols()));
        }
    }
    return s;
}

struct State
{
    Vector x;                // current flattened matrix
    Eigen::VectorXd lambda;  // polytope weights
    Eigen::VectorXd u;       // ellipsoid preimage, |u| <= 1
    int64_t cell = -1;       // grid cell
};

Vector from_u(const Ellipsoid& e, const Eigen::VectorXd& u)
{
    Vector x = e.center();
    for (int k = 0; k < x.dim(); ++k)
        x[k] += e.axes().row(k).dot(u);
    return x;
}

Vector from_lambda(const SetData& s, const Eigen::VectorXd& lam)
{
    Eigen::VectorXd v = s.pts * lam;
    Vector x(s.d);
    for (int k = 0; k < s.d; ++k)
        x[k] = v[k];
    return x;
}

State random_state(const SetData& s, const CounterRng& rng, uint64_t index)
{
    State st;
    const MatrixSet& e = *s.set;
    if (e.is_polytope())
    {
        const Eigen::Index v = s.pts.cols();
        st.lambda = Eigen::VectorXd::Zero(v);
        if (index % 2 == 0 || v == 1)
        {
            auto k = static_cast<Eigen::Index>(rng.uniform(index, 0) * static_cast<double>(v));
            st.lambda[std::min(k, v - 1)] = 1;
        }
        else
        {
            double total = 0;
            for (Eigen::Index k = 0; k < v; ++k)
            {
                st.lambda[k] = -std::log(rng.uniform(index, static_cast<uint32_t>(1 + k)));
                total += st.lambda[k];
            }
            st.lambda /= total;
        }
        st.x = from_lambda(s, st.lambda);
    }
    else if (const auto* g = std::get_if<GridSet>(&e.rep()))
    {
        auto k = static_cast<std::size_t>(rng.uniform(index, 0) * static_cast<double>(s.occupied.size()));
        st.cell = s.occupied[std::min(k, s.occupied.size() - 1)];
        st.x = g->frame().center(st.cell);
    }
    else
    {
        const int d = s.d;
        st.u.resize(d);
        double len = 0;
        for (int k = 0; k < d; ++k)
        {
            st.u[k] = rng.normal(index, static_cast<uint32_t>(2 * k));
            len += st.u[k] * st.u[k];
        }
        double r = std::pow(rng.uniform(index, static_cast<uint32_t>(2 * d)), 1.0 / d);
        st.u *= r / std::sqrt(len);
        st.x = from_u(std::get<Ellipsoid>(e.rep()), st.u);
    }
    return st;
}

State vertex_state(const SetData& s, Eigen::Index v)
{
    State st;
    st.lambda = Eigen::VectorXd::Zero(s.pts.cols());
    st.lambda[v] = 1;
    st.x = from_lambda(s, st.lambda);
    return st;
}

// Best replacement of column `col` of block state `st` for the objective
// |alpha + g·x_col|; returns the new objective and updates `st` when it improves.
double column_move(const SetData& s, State& st, int col, const Vector& g, double alpha, double current,
                   uint64_t& evals)
{
    const int n = s.n, d = s.d;
    const MatrixSet& e = *s.set;
    double best = current;
    if (e.is_polytope())
    {
        Eigen::VectorXd b(d - n + 1);
        int row = 0;
        for (int k = 0; k < d; ++k)
            if (k / n != col)
                b[row++] = st.x[k];
        b[row] = 1;
        Eigen::VectorXd c = Eigen::VectorXd::Zero(s.pts.cols());
        for (int r = 0; r < n; ++r)
            c += g[r] * s.pts.row(col * n + r).transpose();
        for (double sign : {1.0, -1.0})
        {
            LpResult lp = solve_lp(s.slice_a[col], b, sign * c);
            ++evals;
            if (lp.status != LpStatus::Optimal)
                continue;
            double v = std::abs(alpha + sign * lp.value);
            if (v > best * (1 + 1e-13) + 1e-300)
            {
                best = v;
                st.lambda = lp.x;
                st.x = from_lambda(s, st.lambda);
            }
        }
        return best;
    }
    if (const auto* gs = std::get_if<GridSet>(&e.rep()))
    {
        const GridFrame& f = gs->frame();
        int64_t idx[kMaxSetDim];
        f.unravel(st.cell, idx);
        // n = 2: column `col` occupies coordinates 2·col and 2·col + 1
        const int a0 = col * n, a1 = col * n + 1;
        int64_t cur[kMaxSetDim];
        std::copy(idx, idx + f.dim, cur);
        for (int64_t i = 0; i < f.shape[a0]; ++i)
            for (int64_t j = 0; j < f.shape[a1]; ++j)
            {
                cur[a0] = i;
                cur[a1] = j;
                int64_t lin = f.ravel(cur);
                if (!gs->test(lin))
                    continue;
                ++evals;
                Vector c = f.center(cur);
                double v = std::abs(alpha + g[0] * c[a0] + g[1] * c[a1]);
                if (v > best * (1 + 1e-13) + 1e-300)
                {
                    best = v;
                    st.cell = lin;
                    st.x = c;
                }
            }
        return best;
    }
    const Ellipsoid& el = std::get<Ellipsoid>(e.rep());
    const Eigen::MatrixXd& nb = s.null[col];
    Eigen::VectorXd u0 = st.u - nb * (nb.transpose() * st.u);
    double rho = std::sqrt(std::max(0.0, 1.0 - u0.squaredNorm()));
    Eigen::VectorXd lk(d);
    lk.setZero();
    for (int r = 0; r < n; ++r)
        lk += g[r] * el.axes().row(col * n + r).transpose();
    Eigen::VectorXd h = nb.transpose() * lk;
    double hn = h.norm();
    ++evals;
    if (!(hn > 0))
        return best;
    double base = alpha;
    for (int r = 0; r < n; ++r)
        base += g[r] * (el.center()[col * n + r] + el.axes().row(col * n + r).dot(u0));
    for (double sign : {1.0, -1.0})
    {
        double v = std::abs(base + sign * rho * hn);
        if (v > best * (1 + 1e-13) + 1e-300)
        {
            best = v;
            st.u = u0 + nb * (h * (sign * rho / hn));
            st.x = from_u(el, st.u);
        }
    }
    return best;
}

Vector sum_of(const std::vector<State>& st, int d)
{
    Vector m(d);
    for (const State& s : st)
        m += s.x;
    return m;
}

// Euclidean projection onto the probability simplex.
Eigen::VectorXd simplex_projection(const Eigen::VectorXd& v)
{
    std::vector<double> u(v.data(), v.data() + v.size());
    std::sort(u.begin(), u.end(), std::greater<>());
    double acc = 0, theta = 0;
    for (std::size_t k = 0; k < u.size(); ++k)
    {
        acc += u[k];
        double t = (acc - 1) / static_cast<double>(k + 1);
        if (u[k] - t > 0)
            theta = t;
    }
    return (v.array() - theta).max(0.0).matrix();
}

bool smooth_block(const SetData& s)
{
    return s.set->is_ellipsoid() || (s.set->is_polytope() && s.pts.cols() > 1);
}

// Projected gradient ascent of σ·det jointly over the ellipsoid preimages and the
// polytope weights. Column moves alone stall on sets whose column slices are points
// (lower-dimensional polytopes, and the boundary of a ball).
double joint_ascent(const std::vector<SetData>& data, std::vector<State>& st, int n, uint64_t& evals)
{
    const int d = n * n;
    Vector m = sum_of(st, d);
    double f = flat_det(m, n);
    const double sigma = f < 0 ? -1.0 : 1.0;
    f *= sigma;
    double eta = 0.5;
    std::vector<Eigen::VectorXd> trial(st.size());
    std::vector<Vector> tx(st.size());
    for (int it = 0; it < 400 && eta > 1e-14; ++it)
    {
        Vector grad = flat_det_gradient(m, n);
        Eigen::VectorXd gv(d);
        for (int k = 0; k < d; ++k)
            gv[k] = sigma * grad[k];
        Vector m2(d);
        double gnorm = 0;
        for (std::size_t j = 0; j < st.size(); ++j)
        {
            tx[j] = st[j].x;
            if (data[j].set->is_ellipsoid())
            {
                const Ellipsoid& el = std::get<Ellipsoid>(data[j].set->rep());
                Eigen::VectorXd gu = el.axes().transpose() * gv;
                gnorm = std::max(gnorm, gu.norm());
                Eigen::VectorXd u = st[j].u + eta * gu;
                double len = u.norm();
                if (len > 1)
                    u /= len;
                trial[j] = u;
                tx[j] = from_u(el, u);
            }
            else if (smooth_block(data[j]))
            {
                Eigen::VectorXd gl = data[j].pts.transpose() * gv;
                gnorm = std::max(gnorm, gl.norm());
                trial[j] = simplex_projection(st[j].lambda + eta * gl);
                tx[j] = from_lambda(data[j], trial[j]);
            }
            m2 += tx[j];
        }
        ++evals;
        if (!(gnorm > 0))
            break;
        double f2 = sigma * flat_det(m2, n);
        if (f2 > f * (1 + 1e-15))
        {
            for (std::size_t j = 0; j < st.size(); ++j)
            {
                if (data[j].set->is_ellipsoid())
                    st[j].u = trial[j];
                else if (smooth_block(data[j]))
                    st[j].lambda = trial[j];
                st[j].x = tx[j];
            }
            bool small = f2 - f <= 1e-15 * std::max(1.0, f);
            f = f2;
            m = m2;
            eta *= 1.5;
            if (small)
                break;
        }
        else
            eta *= 0.5;
    }
    return f;
}

struct Outcome
{
    double value = -1;
    std::vector<Vector> argmax;
    uint64_t evals = 0;
};

Outcome ascend(const std::vector<SetData>& data, std::vector<State> st, int n, int max_sweeps)
{
    const int d = n * n;
    Outcome o;
    bool smooth = false;
    for (const SetData& s : data)
        smooth = smooth || smooth_block(s);
    double cur = std::abs(flat_det(sum_of(st, d), n));
    for (int sweep = 0; sweep < max_sweeps; ++sweep)
    {
        const double before = cur;
        for (std::size_t j = 0; j < st.size(); ++j)
            for (int col = 0; col < n; ++col)
            {
                Vector m = sum_of(st, d);
                Vector grad = flat_det_gradient(m, n);
                Vector g(n);
                double alpha = 0;
                for (int r = 0; r < n; ++r)
                {
                    g[r] = grad[col * n + r];
                    alpha += g[r] * (m[col * n + r] - st[j].x[col * n + r]);
                }
                cur = column_move(data[j], st[j], col, g, alpha, cur, o.evals);
            }
        if (smooth)
            cur = std::max(cur, joint_ascent(data, st, n, o.evals));
        cur = std::abs(flat_det(sum_of(st, d), n));
        if (cur <= before * (1 + 1e-12) + 1e-300)
            break;
    }
    o.value = cur;
    for (const State& s : st)
        o.argmax.push_back(s.x);
    return o;
}

bool is_point(const MatrixSet& e)
{
    const auto* p = std::get_if<Polytope>(&e.rep());
    return p && p->size() == 1;
}
}  // namespace

DetSupResult mat_sup_det_sum(std::span<const MatrixSet> sets, const MatSupOptions& opt)
{
    require(!sets.empty(), "mat_sup_det_sum: no sets");
    const int n = sets[0].n();
    for (const MatrixSet& e : sets)
    {
        require(e.n() == n, "mat_sup_det_sum: all sets must hold matrices of one size");
        if (e.empty())
            throw PreconditionError("mat_sup_det_sum: empty set");
    }
    require(opt.restarts >= 1 && opt.max_sweeps >= 1, "mat_sup_det_sum: restarts and sweeps must be positive");
    std::vector<SetData> data;
    for (const MatrixSet& e : sets)
        data.push_back(prepare(e));
    const int l = static_cast<int>(sets.size()), d = n * n;

    DetSupResult r;
    r.method = SupMethod::MultistartLocal;
    Outcome best;

    // vertex tuples
    bool polys = true;
    double tuples = 1;
    for (const SetData& s : data)
    {
        polys = polys && s.set->is_polytope();
        tuples *= s.set->is_polytope() ? static_cast<double>(s.pts.cols()) : 0.0;
    }
    std::vector<Eigen::Index> best_tuple;
    if (polys && tuples <= static_cast<double>(opt.tuple_budget))
    {
        std::vector<Eigen::Index> idx(l, 0);
        double bv = -1;
        while (true)
        {
            Vector m(d);
            for (int j = 0; j < l; ++j)
                for (int k = 0; k < d; ++k)
                    m[k] += data[j].pts(k, idx[j]);
            double v = std::abs(flat_det(m, n));
            ++r.evaluations;
            if (v > bv)
            {
                bv = v;
                best_tuple = idx;
            }
            int j = l - 1;
            while (j >= 0 && ++idx[j] == data[j].pts.cols())
                idx[j--] = 0;
            if (j < 0)
                break;
        }
        r.method = SupMethod::ExhaustiveVertices;
    }

    CounterRng root(opt.seed, 0x3a7);
    std::vector<Outcome> runs(static_cast<std::size_t>(opt.restarts));
    parallel_for(runs.size(), [&](std::size_t i) {
        std::vector<State> st;
        for (int j = 0; j < l; ++j)
        {
            if (i == 0 && !best_tuple.empty())
                st.push_back(vertex_state(data[j], best_tuple[j]));
            else
                st.push_back(random_state(data[j], root.substream(static_cast<uint64_t>(j)), i));
        }
        runs[i] = ascend(data, std::move(st), n, opt.max_sweeps);
    });
    for (const Outcome& o : runs)
    {
        r.evaluations += o.evals;
        if (o.value > best.value)
            best = o;
    }
    r.value = best.value;
    r.argmax = best.argmax;
    r.certificate = std::all_of(sets.begin(), sets.end(), is_point);
    r.slack = 0;
    return r;
}

DetSupResult mat_sup_abs_det(const MatrixSet& e, const MatSupOptions& opt)
{
    return mat_sup_det_sum(std::span<const MatrixSet>(&e, 1), opt);
}

namespace
{
RatioReport finish(RatioReport r)
{
    bool positive = r.lhs > 0;
    if (r.sup > 0)
        r.ratio = r.lhs / r.sup;
    else if (positive)
    {
        r.infinite = true;
        r.ratio = std::numeric_limits<double>::infinity();
    }
    else
        throw PreconditionError("ratio: supremum and volume are both zero (0/0)");
    r.certificate = r.search.certificate;
    return r;
}
}  // namespace

RatioReport theorem31_ratio(std::span<const MatrixSet> sets, const MatSupOptions& opt)
{
    require(!sets.empty(), "theorem31_ratio: no sets");
    const int n = sets[0].n();
    require(static_cast<int>(sets.size()) == n, "theorem31_ratio: need n sets of n x n matrices");
    RatioReport r;
    r.lhs = 1;
    for (const MatrixSet& e : sets)
    {
        double v = e.volume();
        require(std::isfinite(v), "theorem31_ratio: infinite volume");
        r.volumes.push_back(v);
        r.lhs *= std::pow(v, 1.0 / (n * n));
    }
    r.search = mat_sup_det_sum(sets, opt);
    r.sup = r.search.value;
    return finish(r);
}

RatioReport corollary_a_ratio(const MatrixSet& e, std::span<const double> lambdas, const MatSupOptions& opt)
{
    const int n = e.n();
    require(static_cast<int>(lambdas.size()) == n, "corollary_a_ratio: need n scalars");
    std::vector<MatrixSet> sets;
    double prod = 1;
    for (double l : lambdas)
    {
        require(l != 0 && std::isfinite(l), "corollary_a_ratio: scalars must be nonzero");
        prod *= std::abs(l);
        sets.push_back(e.scaled(l));
    }
    RatioReport r;
    r.volumes.push_back(e.volume());
    r.lhs = prod * std::pow(r.volumes[0], 1.0 / n);
    r.search = mat_sup_det_sum(sets, opt);
    r.sup = r.search.value;
    return finish(r);
}

RatioReport corollary_b_ratio(const MatrixSet& e, const MatSupOptions& opt)
{
    RatioReport r;
    r.volumes.push_back(e.volume());
    r.lhs = std::pow(r.volumes[0], 1.0 / e.n());
    r.search = mat_sup_abs_det(e, opt);
    r.sup = r.search.value;
    return finish(r);
}

Json to_json(const RatioReport& r)
{
    Json j{{"volumes", r.volumes},
           {"lhs", r.lhs},
           {"sup", r.sup},
           {"infinite", r.infinite},
           {"certificate", r.certificate},
           {"search", to_json(r.search)}};
    j["ratio"] = r.infinite ? Json(nullptr) : Json(r.ratio);
    return j;
}

}  // namespace symineq
