#include "symineq/detsup/sublevel.hpp"

#include <cmath>

#include "symineq/detsup/determinant.hpp"
#include "symineq/geomcore/error.hpp"

namespace symineq
{
namespace
{
RegionSampler sampler_of(const Region& e)
{
    return std::visit([](const auto& x) { return RegionSampler::of(x); }, e);
}
}  // namespace

MCEstimate sublevel_measure(std::span<const Region> sets, const Vector& y, double delta, uint64_t samples,
                            uint64_t seed)
{
    const int n = y.dim();
    require(static_cast<int>(sets.size()) == n && n >= 1 && n <= kMaxSetDim, "sublevel_measure: need n sets in R^n");
    require(delta > 0, "sublevel_measure: delta must be positive");
    if (samples < kMinSublevelSamples)
        throw PreconditionError("sublevel_measure: at least 10^4 samples are required");
    std::vector<RegionSampler> s;
    double mass = 1;
    for (const Region& e : sets)
    {
        require(region_dim(e) == n, "sublevel_measure: dimension mismatch");
        s.push_back(sampler_of(e));
        mass *= s.back().volume();
    }
    CounterRng rng(seed, 0x5ab1u);
    std::vector<CounterRng> streams;
    for (int j = 0; j < n; ++j)
        streams.push_back(rng.substream(j));
    return mc_estimate(
        samples, seed,
        [&](uint64_t i) {
            std::array<Vector, kMaxSetDim + 1> p;
            for (int j = 0; j < n; ++j)
                p[j] = s[j].sample(streams[j], i, 0);
            p[n] = y;
            return simplex_det(std::span<const Vector>(p.data(), n + 1)) < delta ? 1.0 : 0.0;
        },
        mass);
}

std::vector<double> geometric_sweep(double lo, double hi, int per_decade)
{
    require(lo > 0 && hi >= lo && per_decade >= 1, "geometric_sweep: need 0 < lo <= hi");
    std::vector<double> out;
    const double step = std::pow(10.0, 1.0 / per_decade);
    for (int k = 0;; ++k)
    {
        double v = lo * std::pow(step, k);
        if (v > hi * (1 + 1e-12))
            break;
        out.push_back(v);
    }
    return out;
}

GressmanReport gressman_ratio(std::span<const Region> sets, const Vector& y, std::span<const double> deltas,
                              uint64_t samples, uint64_t seed)
{
    require(!deltas.empty(), "gressman_ratio: empty delta sweep");
    const int n = y.dim();
    std::vector<Region> balls;
    double norm_mass = 1;
    for (const Region& e : sets)
    {
        double v = region_volume(e);
        balls.push_back(Shell{y, 0.0, std::pow(v / unit_ball_volume(n), 1.0 / n)});
        norm_mass *= std::pow(v, 1.0 - 1.0 / n);
    }
    GressmanReport r;
    r.pass = true;
    for (double d : deltas)
    {
        SublevelPoint p;
        p.delta = d;
        p.original = sublevel_measure(sets, y, d, samples, seed);
        p.rearranged = sublevel_measure(balls, y, d, samples, seed);
        p.ratio = p.original.mean / (d * norm_mass);
        double sigma = std::hypot(p.original.stderr, p.rearranged.stderr);
        p.rearranged_ok = p.rearranged.mean >= p.original.mean - 3 * sigma;
        r.pass = r.pass && p.rearranged_ok;
        if (p.ratio > r.max_ratio)
        {
            r.max_ratio = p.ratio;
            r.argmax_delta = d;
        }
        r.points.push_back(p);
    }
    return r;
}

Json to_json(const MCEstimate& e)
{
    return Json{{"mean", e.mean}, {"stderr", e.stderr}, {"samples", e.samples}, {"seed", e.seed}};
}

Json to_json(const GressmanReport& r)
{
    Json pts = Json::array();
    for (const auto& p : r.points)
        pts.push_back(Json{{"delta", p.delta},
                           {"original", to_json(p.original)},
                           {"rearranged", to_json(p.rearranged)},
                           {"ratio", p.ratio},
                           {"rearranged_ok", p.rearranged_ok}});
    return Json{{"points", pts}, {"max_ratio", r.max_ratio}, {"argmax_delta", r.argmax_delta}, {"pass", r.pass}};
}

}  // namespace symineq
