#pragma once

// Shared plumbing for the scenario bodies.

#include <cmath>
#include <string>
#include <vector>

#include "symineq/detsup/supremum.hpp"
#include "symineq/geomcore/polytope.hpp"
#include "symineq/geomcore/sampling.hpp"
#include "symineq/labcli/scenarios.hpp"
#include "symineq/matinq/search.hpp"

namespace symineq::lab
{
// Deterministic instance generator on the counter RNG; the k-th draw depends only on (seed, k).
class InstanceGen
{
  public:
    explicit InstanceGen(uint64_t seed) : rng_(seed, 0x6c6162) {}

    double uniform(double a = 0, double b = 1) { return a + (b - a) * rng_.uniform(next_++, 0); }
    int integer(int a, int b)
    {
        int k = a + static_cast<int>(uniform() * (b - a + 1));
        return std::min(k, b);
    }
    Vector in_box(int d, double lo, double hi);
    Vector in_ball(int d, double r = 1);
    Matrix matrix(int rows, int cols, double lo = -1, double hi = 1);
    // |det| at least min_det
    Matrix invertible(int d, double min_det = 0.2);
    Vector direction(int d);
    // hull of `points` uniform points of B(0, radius) shifted by a point of [-shift, shift]^d
    Polytope polytope(int d, int points, double radius = 1, double shift = 0.5, double min_volume = 1e-3);

  private:
    CounterRng rng_;
    uint64_t next_ = 0;
};

// Effective budgets and tolerances are echoed into the payload so a report shows what it was held to.
struct Ctx
{
    const ExperimentConfig& cfg;
    InstanceGen gen;
    Json tolerances = Json::object();
    Json budgets = Json::object();
    std::vector<ConstantRecord> records;

    explicit Ctx(const ExperimentConfig& c) : cfg(c), gen(c.seed) {}

    double tol(const std::string& name, double fallback);
    uint64_t samples(uint64_t fallback);
    int restarts(int fallback);
    int iterations(int fallback);
    double cell(double fallback);
    int instances(int fallback);
    // int or list parameter
    std::vector<int> int_list(const std::string& name, std::vector<int> fallback) const;
    std::vector<double> real_list(const std::string& name, std::vector<double> fallback) const;

    SupOptions sup_options();
    MatSupOptions mat_options(int default_restarts = 64);
    void record(const std::string& quantity, const Json& instance, double ratio, bool certificate);

    ScenarioResult finish(ScenarioResult r);
};

// relative agreement |a − b| ≤ rel·|b|
inline bool close_rel(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::abs(b);
}

Json polytope_list(const std::vector<Polytope>& ps);

ScenarioResult iso_15(Ctx& c);
ScenarioResult iso_16(Ctx& c);
ScenarioResult det_17(Ctx& c);
ScenarioResult det_18(Ctx& c);
ScenarioResult relation_19(Ctx& c);
ScenarioResult simplexbound_110(Ctx& c);
ScenarioResult macbeath_111(Ctx& c);
ScenarioResult lemma_21(Ctx& c);
ScenarioResult lemma_22(Ctx& c);
ScenarioResult lemma_24(Ctx& c);
ScenarioResult theorem_23(Ctx& c);
ScenarioResult sharp_227(Ctx& c);
ScenarioResult sharp_228(Ctx& c);

ScenarioResult theorem_25(Ctx& c);
ScenarioResult remark_26(Ctx& c);
ScenarioResult theorem_27_j(Ctx& c);
ScenarioResult theorem_27_g(Ctx& c);

ScenarioResult main_31(Ctx& c);
ScenarioResult corollary_a(Ctx& c);
ScenarioResult corollary_b(Ctx& c);
ScenarioResult counterexample_22(Ctx& c);
ScenarioResult example_32(Ctx& c);
ScenarioResult remark_33(Ctx& c);
ScenarioResult witness_132(Ctx& c);

}  // namespace symineq::lab
