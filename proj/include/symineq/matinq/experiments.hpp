#pragma once

#include <array>
#include <span>
#include <vector>

#include "symineq/matinq/search.hpp"

namespace symineq
{
// E = {[[a, b], [c, d]] : 1/N ≤ a, b ≤ N, 0 ≤ ad ≤ 1, 0 ≤ bc ≤ 1}, a product of two
// copies of S = {(a, d) : 1/N ≤ a ≤ N, 0 ≤ a·d ≤ 1} with |S| = 2 ln N.
struct CounterexampleOptions
{
    // cell of the chart grid (ln a, a·d); membership is tested in (a, d) at mapped centres
    double chart_cell = 1.0 / 64;
    // cross-check on a uniform (a, d) grid, done for N ≤ direct_max_n
    double direct_cell = 1.0 / 128;
    double direct_max_n = 10;
    // 4D grid in matrix coordinates searched with mat_sup_abs_det, for N ≤ direct_max_n
    double matrix_cell = 0.25;
    double volume_tolerance = 0.03;
    uint64_t samples = 20000;
    uint64_t seed = 0;
};

struct CounterexampleReport
{
    double n_param = 0;
    double log_n = 0;
    double volume_exact = 0;     // (2 ln N)²
    double volume = 0;           // chart grid measurement
    double volume_rel_error = 0;
    double volume_direct = -1;   // uniform grid, −1 when skipped
    double sup = 0;              // largest |det| found (grid scan, samples, search)
    double sup_grid = 0;
    double sup_search = -1;      // mat_sup_abs_det on the matrix grid, −1 when skipped
    double ratio = 0;            // |E|^{1/2} / sup
    bool pass = false;
};

// Membership in the set above (matrix entries in the column-major flattening).
bool in_counterexample_set(const Vector& x, double n_param);
CounterexampleReport nonconvex_counterexample(double n_param, const CounterexampleOptions& opt = {});

struct PerturbedBallReport
{
    double delta = 0;
    double p = 0;
    double sup = 0;             // over co{P ∪ B}, searched
    double sup_sampled = 0;     // sphere directions × λ grid
    double best_lambda = 0;
    double ball_sup = 0;        // sup over B itself
    double volume_ball = 0;
    bool pass = false;
};

// co{P ∪ B(0,1)} = ∪_λ B((1−λ)P, λ) with P = [[0, 0], [0, p]], p = 1/√(1−δ); 0 ≤ δ < 1/25.
PerturbedBallReport perturbed_ball_experiment(double delta, int lambda_steps = 200, int directions = 20000,
                                              uint64_t seed = 0);

// Finite set of lattice cells in ℝ^{n²} (cell index k on axis i covers
// [origin_i + k·cell, origin_i + (k+1)·cell)); axes follow the column-major flattening,
// so the last n axes carry the last column.
class CellSet
{
  public:
    static constexpr int64_t kMaxFrameCells = int64_t{1} << 30;
    static constexpr std::size_t kMaxOccupied = std::size_t{1} << 26;

    CellSet(int n, Vector origin, double cell, std::vector<int64_t> shape, std::vector<int64_t> occupied);
    static CellSet from_grid(const GridSet& g);  // n = 2
    // E = C_1 × … × C_n with column sets C_j ⊂ ℝⁿ sharing one cell size
    static CellSet column_product(std::span<const GridSet> columns);

    int n() const { return n_; }
    double cell() const { return cell_; }
    const Vector& origin() const { return origin_; }
    const std::vector<int64_t>& shape() const { return shape_; }
    const std::vector<int64_t>& occupied() const { return occupied_; }
    int64_t count() const { return static_cast<int64_t>(occupied_.size()); }
    double volume() const;

  private:
    int n_;
    Vector origin_;
    double cell_;
    std::vector<int64_t> shape_;
    std::vector<int64_t> occupied_;  // sorted linear indices, axis 0 fastest
};

struct SliceLevel
{
    int level = 0;
    int columns = 0;            // F_k holds n × columns matrices
    int64_t cells = 0;          // |F_k| in cells
    int64_t v_cells = 0;        // |v(F_k)|
    int64_t fibre_cells = 0;    // |F_k^{x_k}|, the largest fibre
    std::vector<double> x;      // centre of the fixed block x_k (n·(columns−1) entries)
    double volume = 0, v_volume = 0, fibre_volume = 0;  // cell counts times the cell measures
    bool holds = false;         // cells ≤ v_cells · fibre_cells, exact
};

struct SliceChain
{
    int n = 0;
    int64_t cells = 0;
    std::vector<SliceLevel> levels;  // k = 0 … n−2
    // |v(F_{n−2})| · Π_k |F_k^{x_k}| ≥ |E|, in cells
    long double chain_product = 0;
    bool chain_holds = false;
    bool holds = false;
};

SliceChain slicing_decomposition(const CellSet& e);
SliceChain slicing_decomposition(const MatrixSet& e);  // grid representation only

struct Lemma132Witness
{
    std::vector<Vector> matrices;  // A_1 … A_n
    std::vector<int> signs;        // s_j ∈ {0, 1}
    double value = 0;              // |det(Σ s_j A_j)|
    double volume = 0;
    double ratio = 0;              // value / |E|^{1/n}; 0 when |E| = 0
    bool members = false;          // every A_j passed the membership test
    int patterns = 0;              // sign patterns evaluated
    double all_ones_value = 0;
};

Lemma132Witness lemma132_witness(const MatrixSet& e, const MatSupOptions& opt = {});

struct HadamardTuple
{
    double volume = 0;   // vol co{A_0, …, A_4} = |det[A_j − A_0]| / 4!
    double det = 0;      // |det[A_j − A_0]|
    double product = 0;  // Π_j |A_j − A_0|
};
HadamardTuple hadamard_tuple(std::span<const Vector> tuple);

struct HadamardReport
{
    uint64_t trials = 0;
    uint64_t violations = 0;       // |det[A_j − A_0]| > Π|A_j − A_0|
    double max_volume = 0;
    double sup = 0;
    double max_ratio = 0;          // max vol / sup^n
    double max_hadamard_ratio = 0; // max |det| / Π
    bool pass = false;
};

// n = 2 only; n = 3 throws UnsupportedError.
HadamardReport hadamard_simplex_bound(const MatrixSet& e, uint64_t trials, uint64_t seed,
                                      const MatSupOptions& opt = {});

struct PremultiplyReport
{
    double det_t = 0;
    bool vertex_mode = false;
    double sup = 0, sup_transformed = 0, sup_expected = 0;
    double sup_error = 0, sup_tolerance = 0;
    double volume = 0, volume_transformed = 0, volume_expected = 0;
    double volume_error = 0, volume_tolerance = 0;  // relative
    bool pass = false;
};

// cell = 0 keeps the grid cell when E is a grid.
PremultiplyReport premultiply_invariance_check(const MatrixSet& e, const Matrix& t, double cell = 0,
                                               const MatSupOptions& opt = {});

Json to_json(const CounterexampleReport& r);
Json to_json(const PerturbedBallReport& r);
Json to_json(const SliceChain& c);
Json to_json(const Lemma132Witness& w);
Json to_json(const HadamardReport& r);
Json to_json(const PremultiplyReport& r);

}  // namespace symineq
