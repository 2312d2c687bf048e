#pragma once

#include <span>
#include <vector>

#include "symineq/detsup/supremum.hpp"
#include "symineq/matinq/matrix_set.hpp"

namespace symineq
{
struct MatSupOptions
{
    uint64_t seed = 0;
    int restarts = 64;
    int max_sweeps = 200;
    // vertex tuples scanned outright when the product of vertex counts stays below this
    uint64_t tuple_budget = 1'000'000;
};

// Largest |det| over the vertices alone.
double vertex_scan_abs_det(const Polytope& p, int n);

// sup_{A ∈ E} |det A|. Column-wise ascent: with every other column fixed, det is
// linear in the remaining column, so each move maximizes a linear functional over a
// slice of E (an LP over the vertex weights for polytopes, a fibre scan for grids,
// a closed form for ellipsoids, which also take projected gradient steps).
// Multistart from seeded points plus a vertex scan. The value is a lower bound;
// `certificate` is set only when E is a single matrix.
DetSupResult mat_sup_abs_det(const MatrixSet& e, const MatSupOptions& opt = {});

// sup |det(A_1 + … + A_k)| over A_j ∈ E_j, by block-column ascent over (j, column).
DetSupResult mat_sup_det_sum(std::span<const MatrixSet> sets, const MatSupOptions& opt = {});

struct RatioReport
{
    std::vector<double> volumes;
    double lhs = 0;  // volume side of the inequality
    double sup = 0;  // searched supremum (a lower bound)
    double ratio = 0;  // lhs / sup; sup is a search lower bound, so this can only overstate the ratio
    bool infinite = false;  // sup = 0 with positive volumes
    bool certificate = false;
    DetSupResult search;
};

// Π|E_j|^{1/n²} / sup|det(ΣA_j)| over n sets.
RatioReport theorem31_ratio(std::span<const MatrixSet> sets, const MatSupOptions& opt = {});
// (Π|λ_j|)·|E|^{1/n} / sup|det(Σλ_j A_j)|, A_j ∈ E.
RatioReport corollary_a_ratio(const MatrixSet& e, std::span<const double> lambdas, const MatSupOptions& opt = {});
// |E|^{1/n} / sup_{A∈E}|det A|.
RatioReport corollary_b_ratio(const MatrixSet& e, const MatSupOptions& opt = {});

Json to_json(const RatioReport& r);

}  // namespace symineq
