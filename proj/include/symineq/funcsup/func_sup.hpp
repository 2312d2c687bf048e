#pragma once

#include <string>
#include <vector>

#include "symineq/detsup/determinant.hpp"
#include "symineq/detsup/supremum.hpp"
#include "symineq/rearrange/step_function.hpp"

namespace symineq
{
enum class DetForm { Origin, Simplex };
std::string form_name(DetForm f);
DetForm form_from_name(const std::string& s);

// Below this |det A| the change of variables is refused; see singular_counterexample.
inline constexpr double kMinCoeffDet = 1e-9;

// sup Π f_j(Σ_i a_ij y_i) · det(0, y_1, …, y_n)           (origin, A n×n)
// sup Π f_j(Σ_i a_ij y_i) · det(y_1, …, y_{n+1})          (simplex, A (n+1)×(n+1))
struct FuncSupProblem
{
    std::vector<StepFunction> functions;
    CoefficientMatrix coeffs;
    DetForm form = DetForm::Origin;

    int dim() const;
    // Throws PreconditionError on inconsistent sizes or a singular matrix.
    void validate() const;
};

// Discretization used for rearranged (shell) pieces; coarser than the plain
// determinant defaults because every level combination runs a search.
SupOptions funcsup_options();

struct FuncSupResult
{
    double value = 0;
    // True value lies in [value, value·(1 + slack)].
    double slack = 0;
    bool certificate = false;  // every piece used is a polytope
    std::vector<int> pieces;   // maximizing piece of each function (−1 if value is 0)
    std::vector<Vector> argmax;  // maximizing y_i in the original variables
    uint64_t assignments = 0;
};

// Essential supremum by level combinations: for each choice of one piece per
// function, Π values × sup_det_linear over the piece sets with coefficients A⁻¹
// (origin) or A⁻¹·S (simplex, S the difference matrix). Null pieces are skipped.
FuncSupResult func_sup(const FuncSupProblem& p, const SupOptions& opt = funcsup_options());

FuncSupProblem rearranged(const FuncSupProblem& p);

struct FuncCompareReport
{
    FuncSupResult original;
    FuncSupResult rearranged;
    // Upper end of the original's interval; the rearranged lower bound must not exceed it.
    double allowance = 0;
    bool pass = false;
};

FuncCompareReport func_rearrange_compare(const FuncSupProblem& p, const SupOptions& opt = funcsup_options());

// f1 = χ_A, f2 = χ_B evaluated at y1+y2 (origin), and additionally f3 = χ_B at y3
// with all of f1, f2 at y1+y2+y3 (simplex). The coefficient matrix is singular.
struct SingularReport
{
    DetForm kind = DetForm::Origin;
    bool disjoint = false;  // |A ∩ B| = 0
    double overlap = 0;     // |A ∩ B|
    // 0 when disjoint; otherwise the value at an explicit witness (the sup is then unbounded).
    double original = 0;
    std::vector<Vector> original_witness;
    double rearranged = 0;  // value at an explicit witness for A*, B*
    std::vector<Vector> rearranged_witness;
    bool unbounded = false;  // nonzero values scale without bound along the witness ray
    bool violation = false;  // original == 0 < rearranged
};

SingularReport singular_counterexample(DetForm kind);
SingularReport singular_counterexample(DetForm kind, const Polytope& a, const Polytope& b);

}  // namespace symineq
