#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "symineq/geomcore/ball.hpp"
#include "symineq/geomcore/gridset.hpp"
#include "symineq/geomcore/polytope.hpp"

namespace symineq
{
// Counter-based generator: every draw is a pure function of (seed, stream, index, lane).
class CounterRng
{
  public:
    explicit CounterRng(uint64_t seed, uint64_t stream = 0);

    uint64_t seed() const { return seed_; }
    uint64_t bits(uint64_t index, uint32_t lane) const;
    // Open interval (0, 1).
    double uniform(uint64_t index, uint32_t lane) const;
    double normal(uint64_t index, uint32_t lane) const;  // uses lanes lane, lane+1
    CounterRng substream(uint64_t s) const { return CounterRng(seed_, mix(stream_key_ ^ (s + 0x632be59bd9b4e019ULL))); }

    static uint64_t mix(uint64_t x);

  private:
    CounterRng(uint64_t seed, uint64_t key, int) : seed_(seed), stream_key_(key) {}
    uint64_t seed_;
    uint64_t stream_key_;
};

struct MCEstimate
{
    double mean = 0;
    double stderr = 0;
    uint64_t samples = 0;
    uint64_t seed = 0;
};

class KahanSum
{
  public:
    void add(double x)
    {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0, c_ = 0;
};

// Sample size per reduction chunk; fixed so sums never depend on the worker count.
inline constexpr uint64_t kMcChunk = 4096;

// Mean and standard error of f(i), i in [0, samples), multiplied by `scale`.
MCEstimate mc_estimate(uint64_t samples, uint64_t seed, const std::function<double(uint64_t)>& f, double scale = 1.0);

// Uniform sampler over a polytope (triangulated), grid set or shell.
class RegionSampler
{
  public:
    static RegionSampler of(const Polytope& p);
    static RegionSampler of(const GridSet& g);
    static RegionSampler of(const Shell& s);

    int dim() const { return dim_; }
    double volume() const { return volume_; }
    // Number of consecutive lanes a single sample consumes.
    uint32_t lanes() const { return lanes_; }
    Vector sample(const CounterRng& rng, uint64_t index, uint32_t lane) const;

  private:
    struct Simplices;
    struct Cells;
    enum class Kind { Polytope, Grid, Shell };

    Kind kind_ = Kind::Polytope;
    int dim_ = 0;
    double volume_ = 0;
    uint32_t lanes_ = 0;
    std::shared_ptr<const Simplices> simplices_;
    std::shared_ptr<const Cells> cells_;
    Shell shell_;
};

}  // namespace symineq
