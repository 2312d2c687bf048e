#pragma once

#include "symineq/funcsup/func_sup.hpp"
#include "symineq/funcsup/integrals.hpp"
#include "symineq/geomcore/serialize.hpp"
#include "symineq/rearrange/export.hpp"

namespace symineq
{
Json to_json(const FuncSupProblem& p);
FuncSupProblem funcsup_problem_from_json(const Json& j);
Json to_json(const BLLProblem& p);
BLLProblem bll_problem_from_json(const Json& j);

Json to_json(const FuncSupResult& r);
Json to_json(const FuncCompareReport& r);
Json to_json(const SingularReport& r);
Json to_json(const BllReport& r);

// Dispatches on "type":
//   "func_sup"   {form, coeffs, functions}               -> rearrangement comparison
//   "singular"   {form, [a, b]}                          -> counterexample report
//   "bll"        {b, functions}                          -> I comparison
//   "J" / "G"    {functions}                             -> J / G comparison
// Samples and seed only affect the Monte Carlo kinds.
Json evaluate_problem(const Json& problem, uint64_t samples, uint64_t seed);

}  // namespace symineq
