#include "symineq/geomcore/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "symineq/geomcore/error.hpp"
#include "symineq/geomcore/linalg.hpp"
#include "symineq/geomcore/parallel.hpp"

namespace symineq
{
uint64_t CounterRng::mix(uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CounterRng::CounterRng(uint64_t seed, uint64_t stream) : seed_(seed), stream_key_(mix(mix(seed) ^ stream)) {}

uint64_t CounterRng::bits(uint64_t index, uint32_t lane) const
{
    uint64_t h = mix(stream_key_ ^ mix(index));
    return mix(h ^ (static_cast<uint64_t>(lane) * 0xd1b54a32d192ed03ULL));
}

double CounterRng::uniform(uint64_t index, uint32_t lane) const
{
    return (static_cast<double>(bits(index, lane) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(uint64_t index, uint32_t lane) const
{
    double u1 = uniform(index, lane), u2 = uniform(index, lane + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

MCEstimate mc_estimate(uint64_t samples, uint64_t seed, const std::function<double(uint64_t)>& f, double scale)
{
    if (samples == 0)
        throw PreconditionError("Monte Carlo run needs at least one sample");
    const std::size_t chunks = static_cast<std::size_t>((samples + kMcChunk - 1) / kMcChunk);
    std::vector<double> sum(chunks), sum2(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        KahanSum s, s2;
        uint64_t end = std::min<uint64_t>(samples, (c + 1) * kMcChunk);
        for (uint64_t i = c * kMcChunk; i < end; ++i)
        {
            double v = f(i);
            s.add(v);
            s2.add(v * v);
        }
        sum[c] = s.value();
        sum2[c] = s2.value();
    });
    KahanSum s, s2;
    for (std::size_t c = 0; c < chunks; ++c)
    {
        s.add(sum[c]);
        s2.add(sum2[c]);
    }
    const double n = static_cast<double>(samples);
    double mean = s.value() / n;
    double var = std::max(0.0, s2.value() / n - mean * mean);
    MCEstimate e;
    e.mean = mean * scale;
    e.stderr = std::sqrt(var / n) * std::abs(scale);
    e.samples = samples;
    e.seed = seed;
    return e;
}

struct RegionSampler::Simplices
{
    std::vector<std::array<Vector, kMaxSetDim + 1>> corners;
    std::vector<double> cumulative;
};

struct RegionSampler::Cells
{
    GridFrame frame;
    std::vector<int64_t> occupied;
};

RegionSampler RegionSampler::of(const Polytope& p)
{
    RegionSampler s;
    s.kind_ = Kind::Polytope;
    s.dim_ = p.dim();
    const HullData& h = p.hull();
    auto simp = std::make_shared<Simplices>();
    const int d = std::min(p.dim(), kMaxSetDim);
    if (h.affine_dim == d)
    {
        double acc = 0, m[16];
        for (const Facet& f : h.facets)
        {
            std::array<Vector, kMaxSetDim + 1> c;
            c[0] = h.interior;
            for (int i = 0; i < d; ++i)
                c[i + 1] = h.vertices[f.v[i]];
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k)
                    m[i * d + k] = c[i + 1][k] - c[0][k];
            acc += std::abs(det_small(m, d)) / factorial(d);
            simp->corners.push_back(c);
            simp->cumulative.push_back(acc);
        }
        s.volume_ = acc;
    }
    else
    {
        std::array<Vector, kMaxSetDim + 1> c;
        for (auto& v : c)
            v = h.vertices[0];
        simp->corners.push_back(c);
        simp->cumulative.push_back(0.0);
        s.volume_ = 0;
    }
    s.simplices_ = simp;
    s.lanes_ = static_cast<uint32_t>(d + 2);
    return s;
}

RegionSampler RegionSampler::of(const GridSet& g)
{
    RegionSampler s;
    s.kind_ = Kind::Grid;
    s.dim_ = g.dim();
    auto cells = std::make_shared<Cells>();
    cells->frame = g.frame();
    cells->occupied = g.occupied();
    if (cells->occupied.empty())
        throw DegenerateError("cannot sample an empty grid set");
    s.volume_ = g.volume();
    s.cells_ = cells;
    s.lanes_ = static_cast<uint32_t>(g.dim() + 1);
    return s;
}

RegionSampler RegionSampler::of(const Shell& sh)
{
    RegionSampler s;
    s.kind_ = Kind::Shell;
    s.dim_ = sh.dim();
    s.shell_ = sh;
    s.volume_ = sh.volume();
    s.lanes_ = static_cast<uint32_t>(2 * sh.dim() + 1);
    return s;
}

Vector RegionSampler::sample(const CounterRng& rng, uint64_t index, uint32_t lane) const
{
    const int d = dim_;
    switch (kind_)
    {
        case Kind::Polytope: {
            const auto& sp = *simplices_;
            std::size_t k = 0;
            if (sp.cumulative.size() > 1)
            {
                double t = rng.uniform(index, lane) * sp.cumulative.back();
                k = static_cast<std::size_t>(std::upper_bound(sp.cumulative.begin(), sp.cumulative.end(), t)
                                             - sp.cumulative.begin());
                k = std::min(k, sp.cumulative.size() - 1);
            }
            double w[kMaxSetDim + 1], total = 0;
            for (int i = 0; i <= d; ++i)
            {
                w[i] = -std::log(rng.uniform(index, lane + 1 + i));
                total += w[i];
            }
            Vector x(d);
            for (int i = 0; i <= d; ++i)
                x += sp.corners[k][i] * (w[i] / total);
            return x;
        }
        case Kind::Grid: {
            const auto& c = *cells_;
            std::size_t pick = static_cast<std::size_t>(rng.uniform(index, lane) * c.occupied.size());
            pick = std::min(pick, c.occupied.size() - 1);
            int64_t idx[kMaxSetDim];
            c.frame.unravel(c.occupied[pick], idx);
            Vector x(d);
            for (int k = 0; k < d; ++k)
                x[k] = c.frame.origin[k] + (static_cast<double>(idx[k]) + rng.uniform(index, lane + 1 + k)) * c.frame.cell;
            return x;
        }
        case Kind::Shell: {
            const double a = std::pow(shell_.inner, d), b = std::pow(shell_.outer, d);
            double r = std::pow(a + rng.uniform(index, lane) * (b - a), 1.0 / d);
            Vector u(d);
            if (d == 1)
                u[0] = rng.uniform(index, lane + 1) < 0.5 ? -1.0 : 1.0;
            else if (d == 2)
            {
                double t = 2.0 * std::numbers::pi * rng.uniform(index, lane + 1);
                u = Vector{std::cos(t), std::sin(t)};
            }
            else
            {
                double len = 0;
                for (int k = 0; k < d; ++k)
                {
                    u[k] = rng.normal(index, lane + 1 + 2 * k);
                    len += u[k] * u[k];
                }
                u *= 1.0 / std::sqrt(len);
            }
            return shell_.center + u * r;
        }
    }
    return Vector(d);
}

}  // namespace symineq
