#include "symineq/funcsup/func_sup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "symineq/geomcore/error.hpp"

namespace symineq
{
std::string form_name(DetForm f)
{
    return f == DetForm::Origin ? "origin" : "simplex";
}

DetForm form_from_name(const std::string& s)
{
    if (s == "origin")
        return DetForm::Origin;
    if (s == "simplex")
        return DetForm::Simplex;
    throw PreconditionError("unknown determinant form '" + s + "' (expected origin or simplex)");
}

int FuncSupProblem::dim() const
{
    return functions.empty() ? 0 : functions.front().dim();
}

void FuncSupProblem::validate() const
{
    require(!functions.empty(), "func_sup: no functions");
    const int n = dim();
    for (const StepFunction& f : functions)
        require(f.dim() == n, "func_sup: functions must share one dimension");
    const int want = form == DetForm::Origin ? n : n + 1;
    require(static_cast<int>(functions.size()) == want,
            "func_sup: " + form_name(form) + " form in dimension " + std::to_string(n) + " needs "
                + std::to_string(want) + " functions");
    require(coeffs.rows() == want && coeffs.cols() == want,
            "func_sup: coefficient matrix must be " + std::to_string(want) + "x" + std::to_string(want));
    const double d = coeffs.matrix().determinant();
    if (!(std::abs(d) >= kMinCoeffDet))
        throw PreconditionError("func_sup: coefficient matrix is singular (|det| < 1e-9); the inequality needs an "
                                "invertible matrix, use singular_counterexample to study this case");
}

SupOptions funcsup_options()
{
    SupOptions o;
    o.ball_vertices_2d = 64;
    o.ball_vertices_3d = 200;
    o.ball_vertices_4d = 300;
    return o;
}

namespace
{
CoefficientMatrix reduced_coefficients(const FuncSupProblem& p)
{
    // ỹ_j = Σ_i a_ij y_i, i.e. Ỹ = Y·A, so Y = Ỹ·A⁻¹
    Matrix inv = p.coeffs.matrix().inverse();
    if (p.form == DetForm::Origin)
        return CoefficientMatrix(inv);
    return CoefficientMatrix(inv * CoefficientMatrix::simplex(p.dim()).matrix());
}

struct Level
{
    Region region;
    double value;
    int piece;
};

std::vector<Level> essential_pieces(const StepFunction& f)
{
    std::vector<Level> out;
    const auto& ps = f.pieces();
    for (std::size_t i = 0; i < ps.size(); ++i)
        if (ps[i].value > 0 && region_volume(ps[i].region) > 0)
            out.push_back({ps[i].region, ps[i].value, static_cast<int>(i)});
    // larger values first so ties favour the top level
    std::stable_sort(out.begin(), out.end(), [](const Level& a, const Level& b) { return a.value > b.value; });
    return out;
}
}  // namespace

FuncSupResult func_sup(const FuncSupProblem& p, const SupOptions& opt)
{
    p.validate();
    const int l = static_cast<int>(p.functions.size());
    for (const StepFunction& f : p.functions)
        require(!f.pieces().empty(), "func_sup: a function has no pieces");
    const CoefficientMatrix c = reduced_coefficients(p);
    const Matrix inv = p.coeffs.matrix().inverse();

    std::vector<std::vector<Level>> levels;
    for (const StepFunction& f : p.functions)
        levels.push_back(essential_pieces(f));

    FuncSupResult r;
    r.pieces.assign(l, -1);
    r.certificate = true;
    for (const auto& lv : levels)
        if (lv.empty())
            return r;  // essentially zero

    std::vector<std::size_t> idx(l, 0);
    std::vector<Region> sets;
    while (true)
    {
        double weight = 1;
        sets.clear();
        for (int j = 0; j < l; ++j)
        {
            weight *= levels[j][idx[j]].value;
            sets.push_back(levels[j][idx[j]].region);
        }
        DetSupResult d = sup_det_linear(sets, c, opt);
        ++r.assignments;
        const double v = weight * d.value;
        const double hi = weight * d.value * (1 + d.slack);
        r.certificate = r.certificate && d.certificate;
        if (v > r.value || r.argmax.empty())
        {
            r.value = v;
            for (int j = 0; j < l; ++j)
                r.pieces[j] = levels[j][idx[j]].piece;
            r.argmax.clear();
            for (int i = 0; i < l; ++i)
            {
                Vector y(p.dim());
                for (int j = 0; j < l; ++j)
                    y += d.argmax[j] * inv(j, i);
                r.argmax.push_back(y);
            }
        }
        // slack is relative to the best value found, covering every combination
        r.slack = std::max(r.slack, hi);

        int j = l - 1;
        while (j >= 0 && ++idx[j] == levels[j].size())
            idx[j--] = 0;
        if (j < 0)
            break;
    }
    r.slack = r.value > 0 ? std::max(0.0, r.slack / r.value - 1) : 0.0;
    return r;
}

FuncSupProblem rearranged(const FuncSupProblem& p)
{
    FuncSupProblem q{{}, p.coeffs, p.form};
    for (const StepFunction& f : p.functions)
        q.functions.push_back(rearrange_function(f));
    return q;
}

FuncCompareReport func_rearrange_compare(const FuncSupProblem& p, const SupOptions& opt)
{
    FuncCompareReport rep;
    rep.original = func_sup(p, opt);
    rep.rearranged = func_sup(rearranged(p), opt);
    rep.allowance = rep.original.value * (1 + rep.original.slack);
    rep.pass = rep.rearranged.value <= rep.allowance * (1 + 1e-12) + 1e-300;
    return rep;
}

namespace
{
double cross2(const Vector& a, const Vector& b)
{
    return a[0] * b[1] - a[1] * b[0];
}

// Counter-clockwise vertex ring of a planar polytope.
std::vector<Vector> ring(const Polytope& p)
{
    const HullData& h = p.hull();
    std::vector<Vector> v = h.vertices;
    Vector c = h.interior;
    std::sort(v.begin(), v.end(), [&](const Vector& a, const Vector& b) {
        return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
    });
    return v;
}

std::vector<Vector> clip(const Polytope& a, const Polytope& b)
{
    std::vector<Vector> poly = ring(a);
    for (const Facet& f : b.hull().facets)
    {
        std::vector<Vector> next;
        for (std::size_t i = 0; i < poly.size() && !poly.empty(); ++i)
        {
            const Vector& p = poly[i];
            const Vector& q = poly[(i + 1) % poly.size()];
            double sp = dot(f.normal, p) - f.offset, sq = dot(f.normal, q) - f.offset;
            if (sp <= 0)
                next.push_back(p);
            if ((sp < 0 && sq > 0) || (sp > 0 && sq < 0))
                next.push_back(p + (q - p) * (sp / (sp - sq)));
        }
        poly = std::move(next);
    }
    return poly;
}

double ring_area(const std::vector<Vector>& v)
{
    double a = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        a += cross2(v[i], v[(i + 1) % v.size()]);
    return 0.5 * std::abs(a);
}

Vector ring_centroid(const std::vector<Vector>& v)
{
    Vector c(2);
    for (const Vector& x : v)
        c += x;
    return c * (1.0 / static_cast<double>(v.size()));
}

Vector perp_unit(const Vector& s)
{
    double len = norm(s);
    return len > 0 ? Vector{-s[1] / len, s[0] / len} : Vector{1.0, 0.0};
}

// Π f evaluated at the configuration, times the determinant of the configuration.
double evaluate(DetForm kind, const StepFunction& f1, const StepFunction& f2, const std::vector<Vector>& y)
{
    if (kind == DetForm::Origin)
    {
        Vector s = y[0] + y[1];
        return f1(s) * f2(s) * origin_det(y);
    }
    Vector s = y[0] + y[1] + y[2];
    return f1(s) * f2(s) * f2(y[2]) * simplex_det(y);
}

// Configuration with the shared argument at s, the free point of B (simplex) at t,
// and the determinant equal to |w × (s − 3t)| (simplex) or |w × s| (origin).
std::vector<Vector> witness(DetForm kind, const Vector& s, const Vector& t)
{
    if (kind == DetForm::Origin)
    {
        Vector w = perp_unit(s);
        return {w, s - w};
    }
    Vector w = perp_unit(s - t * 3.0);
    Vector y1 = t + w;
    return {y1, s - y1 - t, t};
}
}  // namespace

SingularReport singular_counterexample(DetForm kind)
{
    return singular_counterexample(kind, box(Vector{0.0, 0.0}, Vector{1.0, 1.0}), box(Vector{2.0, 2.0}, Vector{3.0, 3.0}));
}

SingularReport singular_counterexample(DetForm kind, const Polytope& a, const Polytope& b)
{
    require(a.dim() == 2 && b.dim() == 2, "singular_counterexample: planar sets only");
    require(a.volume() > 0 && b.volume() > 0, "singular_counterexample: sets need positive area");
    SingularReport r;
    r.kind = kind;
    const StepFunction fa = StepFunction::indicator(a), fb = StepFunction::indicator(b);

    std::vector<Vector> common = clip(a, b);
    r.overlap = common.size() >= 3 ? ring_area(common) : 0.0;
    r.disjoint = r.overlap <= 1e-12 * std::min(a.volume(), b.volume());
    if (!r.disjoint)
    {
        // any interior s of A ∩ B works as long as the determinant factor is nonzero
        Vector s = ring_centroid(common);
        if (norm(s) < 1e-9)
            s = s * 0.5 + common[0] * 0.5;
        Vector t = b.hull().interior;
        if (norm(s - t * 3.0) < 1e-9)
            t = t * 0.9 + s * 0.1;
        r.original_witness = witness(kind, s, t);
        r.original = evaluate(kind, fa, fb, r.original_witness);
    }

    const StepFunction ra = rearrange_function(fa), rb = rearrange_function(fb);
    const double rad = std::sqrt(std::min(a.volume(), b.volume()) / std::numbers::pi);
    Vector s{0.0, 0.5 * rad};
    r.rearranged_witness = witness(kind, s, Vector(2));
    r.rearranged = evaluate(kind, ra, rb, r.rearranged_witness);
    // w can be stretched: the shared argument and the point of B stay put while the
    // determinant grows linearly
    r.unbounded = r.rearranged > 0;
    r.violation = r.disjoint && r.rearranged > 0;
    return r;
}

}  // namespace symineq
