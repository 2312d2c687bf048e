#include "symineq/funcsup/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symineq/detsup/determinant.hpp"
#include "symineq/geomcore/error.hpp"

namespace symineq
{
namespace
{
// Draws x from the support of f with density 1/|supp f| and reports f(x).
class SupportSampler
{
  public:
    explicit SupportSampler(const StepFunction& f) : dim_(f.dim())
    {
        double acc = 0;
        for (const Piece& p : f.pieces())
        {
            double v = region_volume(p.region);
            if (!(p.value > 0) || !(v > 0))
                continue;
            acc += v;
            parts_.push_back(std::visit([](const auto& r) { return RegionSampler::of(r); }, p.region));
            values_.push_back(p.value);
            cumulative_.push_back(acc);
        }
        volume_ = acc;
        for (const RegionSampler& s : parts_)
            lanes_ = std::max(lanes_, s.lanes() + 1);
    }

    double volume() const { return volume_; }
    uint32_t lanes() const { return lanes_; }

    Vector sample(const CounterRng& rng, uint64_t index, double& value) const
    {
        std::size_t k = 0;
        if (cumulative_.size() > 1)
        {
            double t = rng.uniform(index, 0) * volume_;
            k = static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), t)
                                         - cumulative_.begin());
            k = std::min(k, cumulative_.size() - 1);
        }
        value = values_[k];
        return parts_[k].sample(rng, index, 1);
    }

  private:
    int dim_;
    std::vector<RegionSampler> parts_;
    std::vector<double> values_;
    std::vector<double> cumulative_;
    double volume_ = 0;
    uint32_t lanes_ = 1;
};

MCEstimate zero_estimate(uint64_t samples, uint64_t seed)
{
    MCEstimate e;
    e.samples = samples;
    e.seed = seed;
    return e;
}

void require_functions(std::span<const StepFunction> f, int points, const char* what)
{
    require(!f.empty(), std::string(what) + ": no functions");
    const int n = f.front().dim();
    require(static_cast<int>(f.size()) == points + 1, std::string(what) + ": wrong number of functions");
    for (int j = 0; j < points; ++j)
        require(f[j].dim() == n, std::string(what) + ": point functions must share one dimension");
    require(f.back().dim() == 1, std::string(what) + ": the weight function must be one-dimensional");
}

// Product density over the point functions, weight evaluated on det(points).
MCEstimate det_weighted(std::span<const StepFunction> f, int points, bool simplex, uint64_t samples, uint64_t seed)
{
    if (samples == 0)
        throw PreconditionError("Monte Carlo run needs at least one sample");
    CounterRng root(seed, 0x7a11);
    std::vector<SupportSampler> samplers;
    std::vector<CounterRng> streams;
    double scale = 1;
    for (int j = 0; j < points; ++j)
    {
        samplers.emplace_back(f[j]);
        streams.push_back(root.substream(static_cast<uint64_t>(j)));
        scale *= samplers.back().volume();
    }
    if (!(scale > 0))
        return zero_estimate(samples, seed);
    const StepFunction& w = f[points];
    return mc_estimate(
        samples, seed,
        [&](uint64_t i) {
            std::vector<Vector> y(points);
            double prod = 1;
            for (int j = 0; j < points; ++j)
            {
                double v = 0;
                y[j] = samplers[j].sample(streams[j], i, v);
                prod *= v;
            }
            double d = simplex ? simplex_det(y) : origin_det(y);
            return prod * w(Vector{d});
        },
        scale);
}
}  // namespace

int BLLProblem::dim() const
{
    return functions.empty() ? 0 : functions.front().dim();
}

void BLLProblem::validate() const
{
    require(!functions.empty(), "bll_integral: no functions");
    for (const StepFunction& f : functions)
        require(f.dim() == dim(), "bll_integral: functions must share one dimension");
    require(b.cols() == static_cast<int>(functions.size()), "bll_integral: B needs one column per function");
    require(b.rows() >= 1 && b.rows() <= b.cols(), "bll_integral: B must be k x m with 1 <= k <= m");
    require(b.allFinite(), "bll_integral: B has non-finite entries");
}

MCEstimate bll_integral(const BLLProblem& p, uint64_t samples, uint64_t seed)
{
    p.validate();
    if (samples < kMinBllSamples)
        throw PreconditionError("bll_integral: at least 10000 samples are required");
    const int k = static_cast<int>(p.b.rows()), m = static_cast<int>(p.b.cols()), n = p.dim();

    std::vector<SupportSampler> samplers;
    for (const StepFunction& f : p.functions)
        samplers.emplace_back(f);

    // choose the k columns whose block gives the smallest prefactor Π|supp f_j| / |det B_J|^n
    std::vector<int> best, cols(k);
    double best_pref = std::numeric_limits<double>::infinity();
    std::vector<bool> mask(m, false);
    std::fill(mask.begin(), mask.begin() + k, true);
    do
    {
        int c = 0;
        for (int j = 0; j < m; ++j)
            if (mask[j])
                cols[c++] = j;
        Matrix blk(k, k);
        for (int a = 0; a < k; ++a)
            blk.col(a) = p.b.col(cols[a]);
        double d = std::abs(blk.determinant());
        if (d < 1e-12)
            continue;
        double pref = std::pow(d, -n);
        for (int j : cols)
            pref *= samplers[j].volume();
        if (pref < best_pref)
        {
            best_pref = pref;
            best = cols;
        }
    } while (std::prev_permutation(mask.begin(), mask.end()));
    if (best.empty())
        throw PreconditionError("bll_integral: unbounded effective support (B has rank below k)");
    if (!(best_pref > 0))
        return zero_estimate(samples, seed);

    Matrix blk(k, k);
    for (int a = 0; a < k; ++a)
        blk.col(a) = p.b.col(best[a]);
    const Matrix inv = blk.inverse();
    std::vector<bool> in_block(m, false);
    for (int j : best)
        in_block[j] = true;

    CounterRng root(seed, 0xb11);
    std::vector<CounterRng> streams;
    for (int j = 0; j < m; ++j)
        streams.push_back(root.substream(static_cast<uint64_t>(j)));
    return mc_estimate(
        samples, seed,
        [&](uint64_t i) {
            double prod = 1;
            std::vector<Vector> z(k);
            for (int a = 0; a < k; ++a)
            {
                double v = 0;
                z[a] = samplers[best[a]].sample(streams[best[a]], i, v);
                prod *= v;
            }
            // X = Z_J · B_J⁻¹
            std::vector<Vector> x(k, Vector(n));
            for (int r = 0; r < k; ++r)
                for (int a = 0; a < k; ++a)
                    x[r] += z[a] * inv(a, r);
            for (int j = 0; j < m && prod > 0; ++j)
            {
                if (in_block[j])
                    continue;
                Vector zj(n);
                for (int r = 0; r < k; ++r)
                    zj += x[r] * p.b(r, j);
                prod *= p.functions[j](zj);
            }
            return prod;
        },
        best_pref);
}

MCEstimate J_functional(std::span<const StepFunction> f, uint64_t samples, uint64_t seed)
{
    require(!f.empty(), "J_functional: no functions");
    const int n = f.front().dim();
    require_functions(f, n, "J_functional");
    return det_weighted(f, n, false, samples, seed);
}

MCEstimate G_functional(std::span<const StepFunction> f, uint64_t samples, uint64_t seed)
{
    require(!f.empty(), "G_functional: no functions");
    const int n = f.front().dim();
    require_functions(f, n + 1, "G_functional");
    return det_weighted(f, n + 1, true, samples, seed);
}

std::string functional_name(Functional f)
{
    switch (f)
    {
        case Functional::I:
            return "I";
        case Functional::J:
            return "J";
        case Functional::G:
            return "G";
    }
    return "?";
}

Functional functional_from_name(const std::string& s)
{
    if (s == "I" || s == "bll")
        return Functional::I;
    if (s == "J")
        return Functional::J;
    if (s == "G")
        return Functional::G;
    throw PreconditionError("unknown functional '" + s + "' (expected I, J or G)");
}

namespace
{
BllReport finish(Functional fn, MCEstimate a, MCEstimate b)
{
    BllReport r;
    r.functional = fn;
    r.original = a;
    r.rearranged = b;
    r.sigma = std::hypot(a.stderr, b.stderr);
    r.pass = b.mean >= a.mean - 3 * r.sigma;
    return r;
}
}  // namespace

BllReport bll_compare(Functional fn, std::span<const StepFunction> f, uint64_t samples, uint64_t seed)
{
    require(fn != Functional::I, "bll_compare: the I functional needs a coefficient matrix");
    std::vector<StepFunction> g;
    for (const StepFunction& h : f)
        g.push_back(rearrange_function(h));
    auto eval = fn == Functional::J ? J_functional : G_functional;
    return finish(fn, eval(f, samples, seed), eval(g, samples, seed));
}

BllReport bll_compare(const BLLProblem& p, uint64_t samples, uint64_t seed)
{
    BLLProblem q{{}, p.b};
    for (const StepFunction& h : p.functions)
        q.functions.push_back(rearrange_function(h));
    return finish(Functional::I, bll_integral(p, samples, seed), bll_integral(q, samples, seed));
}

}  // namespace symineq
