#pragma once

#include <Eigen/Dense>

namespace symineq
{
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpResult
{
    LpStatus status = LpStatus::Infeasible;
    Eigen::VectorXd x;
    double value = 0;
    int iterations = 0;
};

// maximize cᵀx subject to A x = b, x >= 0. Two-phase revised simplex with
// Bland's rule, so it terminates on degenerate problems.
LpResult solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                  int max_iterations = 50'000);

// Weights λ >= 0, Σλ = 1 with Σ λ_i p_i = x, or an empty vector if x is outside
// the hull. Points are the columns of `pts`.
Eigen::VectorXd convex_weights(const Eigen::MatrixXd& pts, const Eigen::VectorXd& x, double tol = 1e-9);

}  // namespace symineq
