#pragma once

#include <cmath>
#include <utility>

namespace symineq
{
// Determinant of a small row-major n×n matrix; `a` is overwritten.
inline double det_inplace(double* a, int n)
{
    double d = 1.0;
    for (int c = 0; c < n; ++c)
    {
        int piv = c;
        double best = std::abs(a[c * n + c]);
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[r * n + c]) > best)
            {
                best = std::abs(a[r * n + c]);
                piv = r;
            }
        if (best == 0.0)
            return 0.0;
        if (piv != c)
        {
            for (int k = 0; k < n; ++k)
                std::swap(a[c * n + k], a[piv * n + k]);
            d = -d;
        }
        double p = a[c * n + c];
        d *= p;
        for (int r = c + 1; r < n; ++r)
        {
            double f = a[r * n + c] / p;
            if (f == 0.0)
                continue;
            for (int k = c + 1; k < n; ++k)
                a[r * n + k] -= f * a[c * n + k];
        }
    }
    return d;
}

// Closed forms for n ≤ 3 keep hot loops cheap; `a` is row-major and left intact.
inline double det_small(const double* a, int n)
{
    switch (n)
    {
        case 1:
            return a[0];
        case 2:
            return a[0] * a[3] - a[1] * a[2];
        case 3:
            return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6])
                   + a[2] * (a[3] * a[7] - a[4] * a[6]);
        case 4: {
            double s0 = a[0] * a[5] - a[1] * a[4];
            double s1 = a[0] * a[6] - a[2] * a[4];
            double s2 = a[0] * a[7] - a[3] * a[4];
            double s3 = a[1] * a[6] - a[2] * a[5];
            double s4 = a[1] * a[7] - a[3] * a[5];
            double s5 = a[2] * a[7] - a[3] * a[6];
            double c5 = a[10] * a[15] - a[11] * a[14];
            double c4 = a[9] * a[15] - a[11] * a[13];
            double c3 = a[9] * a[14] - a[10] * a[13];
            double c2 = a[8] * a[15] - a[11] * a[12];
            double c1 = a[8] * a[14] - a[10] * a[12];
            double c0 = a[8] * a[13] - a[9] * a[12];
            return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;
        }
        default: {
            double tmp[16 * 16];
            for (int i = 0; i < n * n; ++i)
                tmp[i] = a[i];
            return det_inplace(tmp, n);
        }
    }
}

inline double factorial(int n)
{
    double f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

}  // namespace symineq
