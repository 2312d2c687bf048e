#pragma once

#include <vector>

#include "symineq/geomcore/region.hpp"
#include "symineq/geomcore/sampling.hpp"
#include "symineq/geomcore/serialize.hpp"

namespace symineq
{
inline constexpr uint64_t kMinSublevelSamples = 10'000;

// Monte Carlo estimate of |{(y_1..y_n) ∈ ΠE_j : det(y, y_1, …, y_n) < delta}|.
MCEstimate sublevel_measure(std::span<const Region> sets, const Vector& y, double delta, uint64_t samples,
                            uint64_t seed);

// Geometric grid from lo to hi (inclusive), `per_decade` points per factor of ten.
std::vector<double> geometric_sweep(double lo, double hi, int per_decade = 8);

struct SublevelPoint
{
    double delta = 0;
    MCEstimate original;
    MCEstimate rearranged;  // sets replaced by balls of equal volume centred at y
    double ratio = 0;       // original / (delta Π|E_j|^{1−1/n})
    bool rearranged_ok = false;
};

struct GressmanReport
{
    std::vector<SublevelPoint> points;
    double max_ratio = 0;
    double argmax_delta = 0;
    bool pass = false;  // every rearranged estimate >= original − 3σ
};

GressmanReport gressman_ratio(std::span<const Region> sets, const Vector& y, std::span<const double> deltas,
                              uint64_t samples, uint64_t seed);

Json to_json(const MCEstimate& e);
Json to_json(const GressmanReport& r);

}  // namespace symineq
