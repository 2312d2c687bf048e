#pragma once

#include <span>
#include <string>
#include <vector>

#include "symineq/geomcore/sampling.hpp"
#include "symineq/rearrange/step_function.hpp"

namespace symineq
{
inline constexpr uint64_t kMinBllSamples = 10'000;

// I(f) = ∫ Π_j f_j(Σ_i b_ij x_i) dx_1…dx_k with x_i ∈ ℝⁿ, B k×m, k ≤ m.
struct BLLProblem
{
    std::vector<StepFunction> functions;
    Matrix b;

    int dim() const;
    void validate() const;
};

// Samples the z_j of an invertible k-column block of B from the supports of those
// f_j and maps back; throws PreconditionError when no such block exists.
MCEstimate bll_integral(const BLLProblem& p, uint64_t samples, uint64_t seed);

// J = ∫ Π_{j≤n} f_j(y_j) f_{n+1}(det(0, y_1, …, y_n)) dy, f_{n+1} a step function on ℝ.
MCEstimate J_functional(std::span<const StepFunction> f, uint64_t samples, uint64_t seed);
// G = ∫ Π_{j≤n+1} f_j(y_j) f_{n+2}(det(y_1, …, y_{n+1})) dy.
MCEstimate G_functional(std::span<const StepFunction> f, uint64_t samples, uint64_t seed);

enum class Functional { I, J, G };
std::string functional_name(Functional f);
Functional functional_from_name(const std::string& s);

struct BllReport
{
    Functional functional = Functional::J;
    MCEstimate original;
    MCEstimate rearranged;
    double sigma = 0;  // combined standard error
    bool pass = false;  // rearranged >= original − 3σ
};

// Both estimates use the same seed so the sample streams are paired.
BllReport bll_compare(Functional fn, std::span<const StepFunction> f, uint64_t samples, uint64_t seed);
BllReport bll_compare(const BLLProblem& p, uint64_t samples, uint64_t seed);

}  // namespace symineq
