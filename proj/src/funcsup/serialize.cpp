#include "symineq/funcsup/serialize.hpp"

#include "symineq/detsup/sublevel.hpp"
#include "symineq/geomcore/error.hpp"
#include "symineq/rearrange/export.hpp"

namespace symineq
{
namespace
{
Json functions_to_json(const std::vector<StepFunction>& fs)
{
    Json a = Json::array();
    for (const StepFunction& f : fs)
        a.push_back(to_json(f));
    return a;
}

std::vector<StepFunction> functions_from_json(const Json& j)
{
    if (!j.is_array() || j.empty())
        throw FormatError("problem: 'functions' must be a non-empty array");
    std::vector<StepFunction> out;
    for (const Json& f : j)
        out.push_back(step_function_from_json(f));
    return out;
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string("problem: missing field '") + key + "'");
    return j.at(key);
}

Json points_to_json(const std::vector<Vector>& ys)
{
    Json a = Json::array();
    for (const Vector& y : ys)
        a.push_back(vector_to_json(y));
    return a;
}
}  // namespace

Json to_json(const FuncSupProblem& p)
{
    return {{"schema", kSchema},
            {"type", "func_sup"},
            {"form", form_name(p.form)},
            {"coeffs", matrix_to_json(p.coeffs.matrix())},
            {"functions", functions_to_json(p.functions)}};
}

FuncSupProblem funcsup_problem_from_json(const Json& j)
{
    DetForm form = form_from_name(field(j, "form").get<std::string>());
    return FuncSupProblem{functions_from_json(field(j, "functions")),
                          CoefficientMatrix(matrix_from_json(field(j, "coeffs"))), form};
}

Json to_json(const BLLProblem& p)
{
    return {{"schema", kSchema},
            {"type", "bll"},
            {"b", matrix_to_json(p.b)},
            {"functions", functions_to_json(p.functions)}};
}

BLLProblem bll_problem_from_json(const Json& j)
{
    return BLLProblem{functions_from_json(field(j, "functions")), matrix_from_json(field(j, "b"))};
}

Json to_json(const FuncSupResult& r)
{
    return {{"value", r.value},
            {"slack", r.slack},
            {"certificate", r.certificate},
            {"pieces", r.pieces},
            {"argmax", points_to_json(r.argmax)},
            {"assignments", r.assignments}};
}

Json to_json(const FuncCompareReport& r)
{
    return {{"original", to_json(r.original)},
            {"rearranged", to_json(r.rearranged)},
            {"allowance", r.allowance},
            {"pass", r.pass}};
}

Json to_json(const SingularReport& r)
{
    return {{"kind", form_name(r.kind)},
            {"disjoint", r.disjoint},
            {"overlap", r.overlap},
            {"original", r.original},
            {"original_witness", points_to_json(r.original_witness)},
            {"rearranged", r.rearranged},
            {"rearranged_witness", points_to_json(r.rearranged_witness)},
            {"unbounded", r.unbounded},
            {"violation", r.violation}};
}

Json to_json(const BllReport& r)
{
    return {{"functional", functional_name(r.functional)},
            {"original", to_json(r.original)},
            {"rearranged", to_json(r.rearranged)},
            {"sigma", r.sigma},
            {"pass", r.pass}};
}

Json evaluate_problem(const Json& problem, uint64_t samples, uint64_t seed)
{
    const std::string type = field(problem, "type").get<std::string>();
    Json out{{"schema", kSchema}, {"type", type}};
    if (type == "func_sup")
    {
        FuncCompareReport r = func_rearrange_compare(funcsup_problem_from_json(problem));
        out["report"] = to_json(r);
        out["pass"] = r.pass;
    }
    else if (type == "singular")
    {
        DetForm kind = form_from_name(field(problem, "form").get<std::string>());
        SingularReport r = problem.contains("a")
                               ? singular_counterexample(kind, polytope_from_json(problem.at("a")),
                                                         polytope_from_json(field(problem, "b")))
                               : singular_counterexample(kind);
        out["report"] = to_json(r);
        out["pass"] = r.disjoint ? r.violation : r.original > 0;
    }
    else if (type == "bll")
    {
        BllReport r = bll_compare(bll_problem_from_json(problem), samples, seed);
        out["report"] = to_json(r);
        out["pass"] = r.pass;
    }
    else if (type == "J" || type == "G")
    {
        std::vector<StepFunction> f = functions_from_json(field(problem, "functions"));
        BllReport r = bll_compare(functional_from_name(type), f, samples, seed);
        out["report"] = to_json(r);
        out["pass"] = r.pass;
    }
    else
        throw FormatError("problem: unknown type '" + type + "'");
    return out;
}

}  // namespace symineq
