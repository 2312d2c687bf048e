#include "symineq/labcli/scenarios.hpp"

#include <chrono>

#include "scenario_support.hpp"
#include "symineq/geomcore/error.hpp"
#include "symineq/geomcore/linalg.hpp"

namespace symineq
{
namespace lab
{
Vector InstanceGen::in_box(int d, double lo, double hi)
{
    Vector v(d);
    for (int i = 0; i < d; ++i)
        v[i] = uniform(lo, hi);
    return v;
}

Vector InstanceGen::in_ball(int d, double r)
{
    for (;;)
    {
        Vector v = in_box(d, -r, r);
        if (norm2(v) <= r * r)
            return v;
    }
}

Matrix InstanceGen::matrix(int rows, int cols, double lo, double hi)
{
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = uniform(lo, hi);
    return m;
}

Matrix InstanceGen::invertible(int d, double min_det)
{
    for (;;)
    {
        Matrix m = matrix(d, d);
        if (std::abs(m.determinant()) >= min_det)
            return m;
    }
}

Vector InstanceGen::direction(int d)
{
    for (;;)
    {
        Vector v = in_ball(d, 1);
        double len = norm(v);
        if (len > 1e-3)
            return v * (1 / len);
    }
}

Polytope InstanceGen::polytope(int d, int points, double radius, double shift, double min_volume)
{
    for (;;)
    {
        Vector c = in_box(d, -shift, shift);
        std::vector<Vector> v;
        for (int i = 0; i < points; ++i)
            v.push_back(in_ball(d, radius) + c);
        Polytope p = convex_hull(v);
        if (p.hull().affine_dim == d && p.volume() >= min_volume)
            return p;
    }
}

double Ctx::tol(const std::string& name, double fallback)
{
    double v = cfg.tolerance(name, fallback);
    tolerances[name] = v;
    return v;
}

uint64_t Ctx::samples(uint64_t fallback)
{
    uint64_t v = cfg.samples(fallback);
    budgets["samples"] = v;
    return v;
}

int Ctx::restarts(int fallback)
{
    int v = cfg.restarts(fallback);
    budgets["restarts"] = v;
    return v;
}

int Ctx::iterations(int fallback)
{
    int v = cfg.iterations(fallback);
    budgets["iterations"] = v;
    return v;
}

double Ctx::cell(double fallback)
{
    double v = cfg.cell(fallback);
    budgets["cell"] = v;
    return v;
}

int Ctx::instances(int fallback)
{
    int v = cfg.instances(fallback);
    budgets["instances"] = v;
    return v;
}

std::vector<int> Ctx::int_list(const std::string& name, std::vector<int> fallback) const
{
    if (!cfg.params.contains(name))
        return fallback;
    const Json& j = cfg.params.at(name);
    if (j.is_number_integer())
        return {j.get<int>()};
    if (!j.is_array())
        throw FormatError("param '" + name + "' must be an integer or a list of integers");
    return j.get<std::vector<int>>();
}

std::vector<double> Ctx::real_list(const std::string& name, std::vector<double> fallback) const
{
    if (!cfg.params.contains(name))
        return fallback;
    const Json& j = cfg.params.at(name);
    if (j.is_number())
        return {j.get<double>()};
    if (!j.is_array())
        throw FormatError("param '" + name + "' must be a number or a list of numbers");
    return j.get<std::vector<double>>();
}

SupOptions Ctx::sup_options()
{
    SupOptions o;
    o.seed = cfg.seed;
    o.restarts = restarts(o.restarts);
    return o;
}

MatSupOptions Ctx::mat_options(int default_restarts)
{
    MatSupOptions o;
    o.seed = cfg.seed;
    o.restarts = restarts(default_restarts);
    return o;
}

void Ctx::record(const std::string& quantity, const Json& instance, double ratio, bool certificate)
{
    ConstantRecord r;
    r.op = cfg.scenario + "/" + quantity;
    r.instance_hash = instance_hash(instance);
    r.ratio = ratio;
    r.certificate = certificate;
    r.seed = cfg.seed;
    records.push_back(r);
}

ScenarioResult Ctx::finish(ScenarioResult r)
{
    r.payload["tolerances"] = tolerances;
    r.payload["budgets"] = budgets;
    if (!r.payload.contains("constants"))
        r.payload["constants"] = Json::object();
    r.records = std::move(records);
    return r;
}

Json polytope_list(const std::vector<Polytope>& ps)
{
    Json a = Json::array();
    for (const Polytope& p : ps)
        a.push_back(to_json(p));
    return a;
}

}  // namespace lab

namespace
{
using lab::Ctx;

ScenarioInfo entry(std::string id, std::string module, std::string summary, ScenarioResult (*body)(Ctx&))
{
    return ScenarioInfo{std::move(id), std::move(module), std::move(summary), [body](const ExperimentConfig& cfg) {
                            Ctx c(cfg);
                            return c.finish(body(c));
                        }};
}

std::vector<ScenarioInfo> build_registry()
{
    using namespace lab;
    return {
        entry("iso-1.5", "detsup", "|E| ≤ v_n sup|x|^n on random polytopes; balls are sharp", iso_15),
        entry("iso-1.6", "detsup", "isodiametric |E| ≤ v_n (diam/2)^n; balls are sharp", iso_16),
        entry("det-1.7", "detsup", "|E| ≤ A_n sup det(0, y_1..y_n), closed form vs numeric A_n", det_17),
        entry("det-1.8", "detsup", "|E| ≤ B_n sup det(y_1..y_{n+1}), closed form vs numeric B_n", det_18),
        entry("relation-1.9", "detsup", "origin and simplex sups sandwich each other on sets containing 0",
              relation_19),
        entry("simplexbound-1.10", "detsup", "|E| ≤ n^n |T| and E ⊆ −n(T−c)+c for the largest simplex",
              simplexbound_110),
        entry("macbeath-1.11", "detsup", "largest inscribed simplex does not grow under Schwarz rearrangement",
              macbeath_111),
        entry("lemma-2.1", "detsup", "sublevel measure is linear in δ; balls centred at y do best", lemma_21),
        entry("lemma-2.2", "detsup", "1D sums of interval unions shrink under rearrangement", lemma_22),
        entry("lemma-2.4", "detsup", "linear-form, origin and simplex sups shrink on balls", lemma_24),
        entry("theorem-2.3", "detsup", "Steiner symmetrisation in any direction does not increase the sups",
              theorem_23),
        entry("theorem-2.5", "funcsup", "functional sups shrink under symmetric decreasing rearrangement",
              theorem_25),
        entry("remark-2.6", "funcsup", "singular coefficient matrices break the functional comparison", remark_26),
        entry("theorem-2.7-J", "funcsup", "J increases under rearrangement; greedy Steiner rounding converges",
              theorem_27_j),
        entry("theorem-2.7-G", "funcsup", "G and BLL integrals increase under rearrangement", theorem_27_g),
        entry("sharp-2.27", "detsup", "Π|E_j|^{1/n} ≤ A_n sup det(0, y_1..y_n); equality on balls", sharp_227),
        entry("sharp-2.28", "detsup", "Π|E_j|^{1/(n+1)} ≤ B_n sup det(y_1..y_{n+1}); equality on balls",
              sharp_228),
        entry("main-3.1", "matinq", "Π|E_j|^{1/n²} against sup|det(A_1+…+A_n)|; column slicing", main_31),
        entry("corollaryA-3.24", "matinq", "Π|λ_j| |E|^{1/n} against sup|det(Σ λ_j A_j)|", corollary_a),
        entry("corollaryB-3.25", "matinq", "|E|^{1/n} against sup|det A| on convex sets", corollary_b),
        entry("remark-2.2-counterexample", "matinq", "non-convex sets with ratio growing like ln N",
              counterexample_22),
        entry("example-3.2", "matinq", "ball value r²/2, AM-GM ellipsoids, perturbed ball", example_32),
        entry("remark-3.3", "matinq", "simplex volumes in matrix space via Hadamard", remark_33),
        entry("lemma-13.2-witness", "matinq", "explicit sign-pattern witness for |det(Σ s_j A_j)|", witness_132),
    };
}
}  // namespace

const std::vector<ScenarioInfo>& scenario_registry()
{
    static const std::vector<ScenarioInfo> r = build_registry();
    return r;
}

std::vector<std::string> scenario_ids()
{
    std::vector<std::string> ids;
    for (const auto& s : scenario_registry())
        ids.push_back(s.id);
    return ids;
}

const ScenarioInfo& find_scenario(const std::string& id)
{
    for (const auto& s : scenario_registry())
        if (s.id == id)
            return s;
    throw PreconditionError("unknown scenario '" + id + "'");
}

Report run_scenario(const ExperimentConfig& config)
{
    const ScenarioInfo& info = find_scenario(config.scenario);
    auto t0 = std::chrono::steady_clock::now();
    ScenarioResult res = info.run(config);
    auto t1 = std::chrono::steady_clock::now();
    Report r;
    r.scenario = config.scenario;
    Json cj = to_json(config);
    r.inputs_digest = instance_hash(cj);
    r.outcome = !res.pass ? Outcome::Fail : res.budget_exhausted ? Outcome::LowerBoundOnly : Outcome::Pass;
    r.certificate = res.certificate;
    r.payload = std::move(res.payload);
    r.provenance = {{"seed", config.seed}, {"budgets", cj.at("budgets")}, {"tolerances", cj.at("tolerances")},
                    {"params", cj.at("params")}, {"version", kVersion}, {"schema", kSchema},
                    {"module", info.module}};
    r.wall_time = std::chrono::duration<double>(t1 - t0).count();
    r.records = std::move(res.records);
    return r;
}

ExperimentConfig default_config(const std::string& id)
{
    find_scenario(id);
    ExperimentConfig c;
    c.scenario = id;
    c.seed = 20260101;
    return c;
}

}  // namespace symineq
