#include "symineq/matinq/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "symineq/geomcore/error.hpp"

namespace symineq
{
namespace
{
struct Simplex
{
    const Eigen::MatrixXd& a;  // m × (n + m): originals then artificials
    const Eigen::VectorXd& b;
    std::vector<int> basis;
    Eigen::MatrixXd binv;
    int iterations = 0;
    double tol;

    Simplex(const Eigen::MatrixXd& a_, const Eigen::VectorXd& b_, double t) : a(a_), b(b_), tol(t) {}

    void refactor()
    {
        const int m = static_cast<int>(a.rows());
        Eigen::MatrixXd bm(m, m);
        for (int i = 0; i < m; ++i)
            bm.col(i) = a.col(basis[i]);
        binv = bm.partialPivLu().inverse();
    }

    // Pivots until no column in [0, allowed) improves the cost.
    LpStatus run(const Eigen::VectorXd& cost, int allowed, int max_iterations)
    {
        const int m = static_cast<int>(a.rows());
        while (true)
        {
            if (iterations >= max_iterations)
                return LpStatus::IterationLimit;
            refactor();
            Eigen::VectorXd cb(m);
            for (int i = 0; i < m; ++i)
                cb[i] = cost[basis[i]];
            Eigen::RowVectorXd y = cb.transpose() * binv;
            std::vector<bool> in_basis(a.cols(), false);
            for (int v : basis)
                in_basis[v] = true;
            // Bland: first improving column
            int enter = -1;
            for (int j = 0; j < allowed; ++j)
            {
                if (in_basis[j])
                    continue;
                double d = cost[j] - y.dot(a.col(j));
                if (d > tol)
                {
                    enter = j;
                    break;
                }
            }
            if (enter < 0)
                return LpStatus::Optimal;
            Eigen::VectorXd dir = binv * a.col(enter);
            Eigen::VectorXd xb = binv * b;
            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i)
            {
                if (dir[i] <= tol)
                    continue;
                double r = std::max(0.0, xb[i]) / dir[i];
                if (r < best - tol)
                {
                    best = r;
                    leave = i;
                }
                else if (r <= best + tol && basis[i] < basis[leave])
                    leave = i;
            }
            if (leave < 0)
                return LpStatus::Unbounded;
            basis[leave] = enter;
            ++iterations;
        }
    }
};
}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c, int max_iterations)
{
    const int m = static_cast<int>(a.rows()), n = static_cast<int>(a.cols());
    require(b.size() == m && c.size() == n, "solve_lp: dimension mismatch");
    require(a.allFinite() && b.allFinite() && c.allFinite(), "solve_lp: non-finite input");
    LpResult res;
    if (m == 0)
    {
        res.x = Eigen::VectorXd::Zero(n);
        for (int j = 0; j < n; ++j)
            if (c[j] > 0)
            {
                res.status = LpStatus::Unbounded;
                return res;
            }
        res.status = LpStatus::Optimal;
        return res;
    }
    const double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
    const double tol = 1e-11 * scale;

    Eigen::MatrixXd big(m, n + m);
    Eigen::VectorXd rhs = b;
    big.leftCols(n) = a;
    big.rightCols(m).setIdentity();
    for (int i = 0; i < m; ++i)
        if (rhs[i] < 0)
        {
            rhs[i] = -rhs[i];
            big.row(i).head(n) *= -1;
        }

    Simplex s(big, rhs, tol);
    s.basis.resize(m);
    for (int i = 0; i < m; ++i)
        s.basis[i] = n + i;

    Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
    phase1.tail(m).setConstant(-1.0);
    LpStatus st = s.run(phase1, n + m, max_iterations);
    if (st == LpStatus::IterationLimit)
    {
        res.status = st;
        return res;
    }
    s.refactor();
    Eigen::VectorXd xb = s.binv * rhs;
    double infeas = 0;
    for (int i = 0; i < m; ++i)
        if (s.basis[i] >= n)
            infeas += std::abs(xb[i]);
    if (infeas > 1e-9 * scale * m)
    {
        res.status = LpStatus::Infeasible;
        res.iterations = s.iterations;
        return res;
    }
    // pivot remaining artificials out where a structural column can replace them;
    // rows where none can are redundant and keep their artificial at zero
    for (int i = 0; i < m; ++i)
    {
        if (s.basis[i] < n)
            continue;
        std::vector<bool> in_basis(n + m, false);
        for (int v : s.basis)
            in_basis[v] = true;
        for (int j = 0; j < n; ++j)
        {
            if (in_basis[j])
                continue;
            double piv = (s.binv.row(i) * big.col(j))(0);
            if (std::abs(piv) > 1e-9)
            {
                s.basis[i] = j;
                s.refactor();
                break;
            }
        }
    }

    Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
    phase2.head(n) = c;
    st = s.run(phase2, n, max_iterations);
    res.iterations = s.iterations;
    res.status = st;
    if (st != LpStatus::Optimal)
        return res;
    s.refactor();
    xb = s.binv * rhs;
    res.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i)
        if (s.basis[i] < n)
            res.x[s.basis[i]] = std::max(0.0, xb[i]);
    res.value = c.dot(res.x);
    return res;
}

Eigen::VectorXd convex_weights(const Eigen::MatrixXd& pts, const Eigen::VectorXd& x, double tol)
{
    const int d = static_cast<int>(pts.rows()), k = static_cast<int>(pts.cols());
    require(x.size() == d, "convex_weights: dimension mismatch");
    Eigen::MatrixXd a(d + 1, k);
    a.topRows(d) = pts;
    a.row(d).setOnes();
    Eigen::VectorXd b(d + 1);
    b.head(d) = x;
    b[d] = 1;
    LpResult r = solve_lp(a, b, Eigen::VectorXd::Zero(k));
    if (r.status != LpStatus::Optimal)
        return {};
    const double scale = std::max(1.0, pts.cwiseAbs().maxCoeff());
    if ((pts * r.x - x).cwiseAbs().maxCoeff() > tol * scale)
        return {};
    return r.x;
}

}  // namespace symineq
