#include "symineq/rearrange/round_to_ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <queue>

#include "symineq/geomcore/distance.hpp"
#include "symineq/geomcore/error.hpp"
#include "symineq/rearrange/steiner.hpp"

namespace symineq
{
const char* scheme_name(Scheme s)
{
    return s == Scheme::Greedy ? "greedy" : "irrational-basis";
}

Scheme parse_scheme(const std::string& s)
{
    if (s == "greedy")
        return Scheme::Greedy;
    if (s == "irrational-basis" || s == "irrational")
        return Scheme::IrrationalBasis;
    throw PreconditionError("unknown symmetrisation scheme '" + s + "'");
}

std::vector<Vector> irrational_basis(int dim)
{
    require(dim >= 1 && dim <= kMaxSetDim, "irrational_basis: dimension out of range");
    const double a = std::numbers::sqrt2 - 1.0;
    if (dim == 1)
        return {Vector{1.0}};
    if (dim == 2)
        return {Vector{1.0, 0.0}, Vector{std::cos(a * std::numbers::pi), std::sin(a * std::numbers::pi)}};
    std::vector<Vector> out;
    for (int k = 0; k < dim; ++k)
    {
        Vector v = Vector::unit(dim, k) + Vector::unit(dim, (k + 1) % dim) * a;
        out.push_back(v * (1.0 / norm(v)));
    }
    return out;
}

namespace
{
void validate(const RoundOptions& opt)
{
    require(opt.tol > 0, "round_to_ball: tol must be positive");
    require(opt.max_iters >= 0, "round_to_ball: max_iters must be >= 0");
    require(opt.candidates >= 2, "round_to_ball: need at least two candidate directions");
    require(opt.guard_tries >= 1, "round_to_ball: guard_tries must be >= 1");
}

std::vector<Vector> candidate_directions(int d, int m)
{
    if (d == 1)
        return {Vector{1.0}};
    if (d == 2)
    {
        std::vector<Vector> out;
        for (int j = 0; j < m; ++j)
        {
            double th = std::numbers::pi * j / m;
            out.push_back(Vector{std::cos(th), std::sin(th)});
        }
        return out;
    }
    return direction_sequence(d, m);
}

// Completion of u to an orthonormal frame. In the plane the perpendicular is the
// candidate a quarter turn away when the count is even.
std::vector<Vector> completion(const Vector& u)
{
    return perp_basis(u);
}

template <class Body>
void push_snapshot(SymmetrisationTrace& tr, const Body& b)
{
    tr.snapshots.emplace_back(b);
}

// ---------------------------------------------------------------- grids

// Ends of each axis-0 line hold every extreme point of a union of cells.
std::vector<Vector> line_extremes(const GridSet& g)
{
    const GridFrame& f = g.frame();
    std::vector<Vector> pts;
    int64_t line = -1, last = -1;
    g.for_each_occupied([&](int64_t i) {
        int64_t l = i / f.shape[0];
        if (l != line)
        {
            if (last >= 0)
                pts.push_back(f.center(last));
            pts.push_back(f.center(i));
            line = l;
        }
        last = i;
    });
    if (last >= 0)
        pts.push_back(f.center(last));
    return pts;
}

double grid_diameter(const GridSet& g)
{
    auto pts = line_extremes(g);
    double best = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, norm2(pts[i] - pts[j]));
    return std::sqrt(best) + g.cell() * std::sqrt(static_cast<double>(g.dim()));
}

struct Layout
{
    StripLayout strips;
    std::vector<int32_t> incl;  // inclusive per-strip prefix counts of target cells

    Layout(const GridFrame& f, const Vector& u, const StripLayout::Domain& dom, const GridSet& target)
        : strips(f, u, dom)
    {
        incl.resize(strips.bins() ? static_cast<std::size_t>(strips.bin_begin(strips.bins())) : 0);
        for (int64_t b = 0; b < strips.bins(); ++b)
        {
            int32_t acc = 0;
            auto cells = strips.bin(b);
            for (std::size_t j = 0; j < cells.size(); ++j)
            {
                acc += target.test(cells[j]);
                incl[strips.bin_begin(b) + j] = acc;
            }
        }
    }

    // |S_u(E) ∩ target| in cells, or -1 when some strip would overflow the domain.
    int64_t overlap(const std::vector<int32_t>& counts) const
    {
        int64_t s = 0;
        for (int64_t b = 0; b < strips.bins(); ++b)
        {
            int32_t c = counts[b];
            if (c == 0)
                continue;
            if (c > static_cast<int32_t>(strips.bin(b).size()))
                return -1;
            s += incl[strips.bin_begin(b) + c - 1];
        }
        return s;
    }

    void count(const std::vector<int64_t>& occ, std::vector<int32_t>& counts) const
    {
        counts.assign(static_cast<std::size_t>(strips.bins()), 0);
        for (int64_t i : occ)
            ++counts[strips.bin_of(i)];
    }
};

struct GridRounder
{
    const RoundOptions& opt;
    int d;
    GridFrame frame;
    GridSet target;
    int64_t target_count = 0;
    StripLayout::Domain entry, core;
    std::vector<Vector> dirs;
    std::vector<std::unique_ptr<Layout>> core_cache, entry_cache;

    GridRounder(const RoundOptions& o, int dim) : opt(o), d(dim) {}

    Layout& layout(std::vector<std::unique_ptr<Layout>>& cache, std::size_t j, const StripLayout::Domain& dom)
    {
        if (cache.size() < dirs.size())
            cache.resize(dirs.size());
        if (!cache[j])
            cache[j] = std::make_unique<Layout>(frame, dirs[j], dom, target);
        return *cache[j];
    }

    int64_t symdiff_cells(const GridSet& s) const
    {
        int64_t c = 0;
        for (std::size_t w = 0; w < s.words().size(); ++w)
            c += std::popcount(s.words()[w] ^ target.words()[w]);
        return c;
    }
};
}  // namespace

SymmetrisationTrace round_to_ball(const GridSet& input, const RoundOptions& opt)
{
    validate(opt);
    if (input.empty())
        throw DegenerateError("round_to_ball: empty set");
    const int d = input.dim();
    const double cell = input.cell();
    const double margin = 4.0 * cell * std::sqrt(static_cast<double>(d));
    const double reach = input.max_center_norm() + margin;
    const double diam = grid_diameter(input);

    // working frame on the input's lattice covering B(0, reach); copying onto it is exact
    const GridFrame& f0 = input.frame();
    Vector org(d);
    std::array<int64_t, kMaxSetDim> shape{};
    for (int k = 0; k < d; ++k)
    {
        double j0 = std::floor((-reach - f0.origin[k]) / cell);
        org[k] = f0.origin[k] + j0 * cell;
        shape[k] = static_cast<int64_t>(std::ceil((reach - org[k]) / cell)) + 1;
    }
    GridRounder g(opt, d);
    g.frame = GridFrame(org, cell, std::span<const int64_t>(shape.data(), d));
    GridSet e = resample(input, g.frame);
    if (e.count() != input.count())
        throw std::logic_error("round_to_ball: working frame lost cells");

    SymmetrisationTrace tr;
    tr.scheme = opt.scheme;
    tr.volume = e.volume();
    tr.target = schwarz(e);
    g.target = rasterize(tr.target, g.frame);
    g.target_count = g.target.count();
    const double rd = 0.5 * diam + margin;
    g.entry.max_abs_t = rd;
    g.entry.max_radius = reach;
    g.core.max_radius = rd;

    auto record = [&](int it, const Vector& u, const GridSet& s, int64_t sd_cells) {
        TraceStep st;
        st.iteration = it;
        st.direction = u;
        st.symdiff = static_cast<double>(sd_cells) * g.frame.cell_volume();
        st.hausdorff = hausdorff_distance(s, tr.target, opt.hausdorff_directions);
        tr.steps.push_back(st);
    };

    int64_t sd = g.symdiff_cells(e);
    record(0, Vector(), e, sd);
    push_snapshot(tr, e);
    const double goal = opt.tol * tr.volume;
    std::vector<int32_t> counts;
    std::vector<int64_t> occ;

    if (opt.scheme == Scheme::IrrationalBasis)
    {
        g.dirs = irrational_basis(d);
        for (int it = 1; it <= opt.max_iters && tr.steps.back().symdiff > goal; ++it)
        {
            for (std::size_t j = 0; j < g.dirs.size(); ++j)
            {
                Layout& l = g.layout(g.entry_cache, j, g.entry);
                occ = e.occupied();
                l.count(occ, counts);
                e = l.strips.build(counts);
            }
            sd = g.symdiff_cells(e);
            record(it, g.dirs[0], e, sd);
            if (opt.snapshot_every > 0 && it % opt.snapshot_every == 0)
                push_snapshot(tr, e);
        }
    }
    else
    {
        g.dirs = candidate_directions(d, opt.candidates);
        const std::size_t m = g.dirs.size();
        bool centred = false;  // true once E sits inside the core disk
        for (int it = 1; it <= opt.max_iters && tr.steps.back().symdiff > goal; ++it)
        {
            occ = e.occupied();
            const int64_t ecount = static_cast<int64_t>(occ.size());
            // candidate scores |S_u(E) △ E*| in cells
            std::vector<std::pair<int64_t, std::size_t>> score(m);
            std::vector<std::unique_ptr<Layout>> scratch(centred ? 0 : m);
            for (std::size_t j = 0; j < m; ++j)
            {
                Layout* l;
                if (centred)
                    l = &g.layout(g.core_cache, j, g.core);
                else
                {
                    scratch[j] = std::make_unique<Layout>(g.frame, g.dirs[j], g.entry, g.target);
                    l = scratch[j].get();
                }
                l->count(occ, counts);
                int64_t ov = l->overlap(counts);
                score[j] = {ov < 0 ? std::numeric_limits<int64_t>::max() : ecount + g.target_count - 2 * ov, j};
            }
            std::stable_sort(score.begin(), score.end());
            bool accepted = false;
            for (int tries = 0; tries < opt.guard_tries && tries < static_cast<int>(m); ++tries)
            {
                std::size_t j = score[tries].second;
                if (score[tries].first == std::numeric_limits<int64_t>::max())
                    break;
                Layout& first = centred ? *g.core_cache[j] : *scratch[j];
                first.count(occ, counts);
                GridSet s = first.strips.build(counts);
                if (d == 2 && m % 2 == 0)
                {
                    Layout& perp = g.layout(g.core_cache, (j + m / 2) % m, g.core);
                    std::vector<int64_t> so = s.occupied();
                    perp.count(so, counts);
                    if (perp.overlap(counts) < 0)
                        continue;
                    s = perp.strips.build(counts);
                }
                else
                {
                    for (const Vector& w : completion(g.dirs[j]))
                    {
                        Layout extra(g.frame, w, g.core, g.target);
                        std::vector<int64_t> so = s.occupied();
                        extra.count(so, counts);
                        if (extra.overlap(counts) < 0)
                            throw std::logic_error("round_to_ball: completion left the working disk");
                        s = extra.strips.build(counts);
                    }
                }
                int64_t nsd = g.symdiff_cells(s);
                if (nsd <= sd)
                {
                    e = std::move(s);
                    sd = nsd;
                    record(it, g.dirs[j], e, sd);
                    accepted = true;
                    break;
                }
            }
            if (!accepted)
            {
                tr.note = "greedy guard found no non-increasing step at iteration " + std::to_string(it);
                tr.flagged = true;
                break;
            }
            centred = true;
            if (opt.snapshot_every > 0 && it % opt.snapshot_every == 0)
                push_snapshot(tr, e);
        }
    }
    tr.converged = tr.steps.back().symdiff <= goal;
    if (!tr.converged && !tr.flagged)
    {
        tr.flagged = true;
        tr.note = "tolerance not reached within max_iters";
    }
    if (tr.steps.size() > 1 && (opt.snapshot_every <= 0 || tr.steps.back().iteration % opt.snapshot_every != 0))
        push_snapshot(tr, e);
    tr.final_body = e;
    return tr;
}

// ---------------------------------------------------------------- polygons

namespace
{
double tri_area(const Vector& a, const Vector& b, const Vector& c)
{
    return 0.5 * std::abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

// Visvalingam reduction to at most `cap` vertices, then an exact-area rescale about 0.
Polytope cap_vertices(const Polytope& p, int cap, double area)
{
    const auto& ring = p.hull().vertices;
    const int m = static_cast<int>(ring.size());
    if (m <= cap)
        return p;
    std::vector<int> prev(m), next(m);
    std::vector<char> alive(m, 1);
    for (int i = 0; i < m; ++i)
    {
        prev[i] = (i + m - 1) % m;
        next[i] = (i + 1) % m;
    }
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    std::vector<double> key(m);
    for (int i = 0; i < m; ++i)
    {
        key[i] = tri_area(ring[prev[i]], ring[i], ring[next[i]]);
        heap.push({key[i], i});
    }
    int left = m;
    while (left > cap && !heap.empty())
    {
        auto [k, i] = heap.top();
        heap.pop();
        if (!alive[i] || k != key[i])
            continue;
        alive[i] = 0;
        --left;
        int a = prev[i], b = next[i];
        next[a] = b;
        prev[b] = a;
        for (int v : {a, b})
        {
            key[v] = tri_area(ring[prev[v]], ring[v], ring[next[v]]);
            heap.push({key[v], v});
        }
    }
    std::vector<Vector> kept;
    for (int i = 0; i < m; ++i)
        if (alive[i])
            kept.push_back(ring[i]);
    Polytope q = Polytope::hull_of(kept);
    return q.scaled(std::sqrt(area / q.volume()));
}
}  // namespace

SymmetrisationTrace round_to_ball(const Polytope& input, const RoundOptions& opt)
{
    validate(opt);
    if (input.dim() != 2)
        throw UnsupportedError("round_to_ball: exact polytope route is planar; rasterize other dimensions");
    if (!(input.volume() > 0))
        throw DegenerateError("round_to_ball: degenerate polygon");
    SymmetrisationTrace tr;
    tr.scheme = opt.scheme;
    tr.volume = input.volume();
    tr.target = schwarz(input);
    const double goal = opt.tol * tr.volume;
    Polytope k = input;
    auto record = [&](int it, const Vector& u) {
        TraceStep st;
        st.iteration = it;
        st.direction = u;
        st.symdiff = symdiff_volume(k, tr.target);
        st.hausdorff = hausdorff_distance(k, tr.target, opt.hausdorff_directions);
        tr.steps.push_back(st);
    };
    record(0, Vector());
    push_snapshot(tr, k);
    const int cap = std::max(8, opt.max_polygon_vertices);
    if (opt.scheme == Scheme::IrrationalBasis)
    {
        auto basis = irrational_basis(2);
        for (int it = 1; it <= opt.max_iters && tr.steps.back().symdiff > goal; ++it)
        {
            for (const Vector& u : basis)
                k = cap_vertices(steiner_polytope(k, u), cap, tr.volume);
            record(it, basis[0]);
            if (opt.snapshot_every > 0 && it % opt.snapshot_every == 0)
                push_snapshot(tr, k);
        }
    }
    else
    {
        auto dirs = candidate_directions(2, opt.candidates);
        for (int it = 1; it <= opt.max_iters && tr.steps.back().symdiff > goal; ++it)
        {
            std::vector<std::pair<double, std::size_t>> score(dirs.size());
            for (std::size_t j = 0; j < dirs.size(); ++j)
                score[j] = {symdiff_volume(steiner_polytope(k, dirs[j]), tr.target), j};
            std::stable_sort(score.begin(), score.end());
            const double cur = tr.steps.back().symdiff;
            bool accepted = false;
            for (int tries = 0; tries < opt.guard_tries && tries < static_cast<int>(dirs.size()); ++tries)
            {
                const Vector& u = dirs[score[tries].second];
                Polytope s = steiner_polytope(k, u);
                s = cap_vertices(steiner_polytope(s, Vector{-u[1], u[0]}), cap, tr.volume);
                if (symdiff_volume(s, tr.target) <= cur)
                {
                    k = s;
                    record(it, u);
                    accepted = true;
                    break;
                }
            }
            if (!accepted)
            {
                tr.flagged = true;
                tr.note = "greedy guard found no non-increasing step at iteration " + std::to_string(it);
                break;
            }
            if (opt.snapshot_every > 0 && it % opt.snapshot_every == 0)
                push_snapshot(tr, k);
        }
    }
    tr.converged = tr.steps.back().symdiff <= goal;
    if (!tr.converged && !tr.flagged)
    {
        tr.flagged = true;
        tr.note = "tolerance not reached within max_iters";
    }
    if (tr.steps.size() > 1 && (opt.snapshot_every <= 0 || tr.steps.back().iteration % opt.snapshot_every != 0))
        push_snapshot(tr, k);
    tr.final_body = k;
    return tr;
}

SymmetrisationTrace round_to_ball(const Region& e, const RoundOptions& opt)
{
    if (const auto* g = std::get_if<GridSet>(&e))
        return round_to_ball(*g, opt);
    if (const auto* p = std::get_if<Polytope>(&e))
        return round_to_ball(*p, opt);
    throw PreconditionError("round_to_ball: shells are already symmetric; rasterize to a grid first");
}

}  // namespace symineq
