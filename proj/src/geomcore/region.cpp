#include "symineq/geomcore/region.hpp"

#include <algorithm>
#include <limits>

namespace symineq
{
namespace
{
template <class... F>
struct overloaded : F...
{
    using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;
}  // namespace

int region_dim(const Region& r)
{
    return std::visit([](const auto& x) { return x.dim(); }, r);
}

double region_volume(const Region& r)
{
    return std::visit([](const auto& x) { return x.volume(); }, r);
}

bool region_contains(const Region& r, const Vector& x)
{
    return std::visit(overloaded{[&](const Polytope& p) { return p.contains(x, 1e-12); },
                                 [&](const GridSet& g) { return g.contains(x); },
                                 [&](const Shell& s) { return s.contains(x); }},
                      r);
}

void region_bounds(const Region& r, Vector& lo, Vector& hi)
{
    const int d = region_dim(r);
    lo = Vector(d);
    hi = Vector(d);
    for (int k = 0; k < d; ++k)
    {
        lo[k] = std::numeric_limits<double>::infinity();
        hi[k] = -std::numeric_limits<double>::infinity();
    }
    std::visit(overloaded{[&](const Polytope& p) {
                              for (const Vector& v : p.vertices())
                                  for (int k = 0; k < d; ++k)
                                  {
                                      lo[k] = std::min(lo[k], v[k]);
                                      hi[k] = std::max(hi[k], v[k]);
                                  }
                          },
                          [&](const GridSet& g) {
                              const GridFrame& f = g.frame();
                              int64_t idx[kMaxSetDim];
                              g.for_each_occupied([&](int64_t i) {
                                  f.unravel(i, idx);
                                  for (int k = 0; k < d; ++k)
                                  {
                                      double a = f.origin[k] + static_cast<double>(idx[k]) * f.cell;
                                      lo[k] = std::min(lo[k], a);
                                      hi[k] = std::max(hi[k], a + f.cell);
                                  }
                              });
                              if (g.empty())
                                  for (int k = 0; k < d; ++k)
                                      lo[k] = hi[k] = f.origin[k];
                          },
                          [&](const Shell& s) {
                              for (int k = 0; k < d; ++k)
                              {
                                  lo[k] = s.center[k] - s.outer;
                                  hi[k] = s.center[k] + s.outer;
                              }
                          }},
               r);
}

double region_radius(const Region& r, const Vector& c)
{
    return std::visit(overloaded{[&](const Polytope& p) {
                                     double best = 0;
                                     for (const Vector& v : p.vertices())
                                         best = std::max(best, distance(v, c));
                                     return best;
                                 },
                                 [&](const GridSet& g) {
                                     double best = 0;
                                     const double half = 0.5 * g.cell() * std::sqrt(static_cast<double>(g.dim()));
                                     g.for_each_occupied([&](int64_t i) {
                                         best = std::max(best, distance(g.frame().center(i), c) + half);
                                     });
                                     return best;
                                 },
                                 [&](const Shell& s) { return distance(s.center, c) + s.outer; }},
                      r);
}

}  // namespace symineq
