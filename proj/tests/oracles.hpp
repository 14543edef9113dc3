#pragma once

// Test-only oracles, independent of the library implementation paths
// they are used to check.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

// ---------------------------------------------------------------------------
// Discrete Chebyshev approximation by linear programming.
//
// min_{a,E} E  s.t. |S(x_i) - sum_j a_j phi_j(x_i)| <= E over the grid.
// Solved through the dual
//   max sum_i (v_i - u_i) S_i
//   s.t. sum_i (u_i - v_i) phi_j(x_i) = 0 for all j, sum_i (u_i+v_i) = 1,
// with a revised simplex whose basis has s+2 columns. phi_j are shifted
// Chebyshev polynomials (conditioning only; the feasible set is the same
// as with monomials). Returns the minimax value E*.
// ---------------------------------------------------------------------------
inline double lp_discrete_minimax(const std::function<double(double)>& S, int s,
                                  const std::vector<double>& grid) {
    using Mat = Eigen::MatrixXd;
    using Vec = Eigen::VectorXd;
    const int n = static_cast<int>(grid.size());
    const int m = s + 2;  // rows: s+1 moment rows + normalization

    Mat phi(n, s + 1);
    for (int i = 0; i < n; ++i) {
        double t = 2 * grid[i] - 1;
        double t0 = 1, t1 = t;
        for (int j = 0; j <= s; ++j) {
            if (j == 0)
                phi(i, j) = 1;
            else if (j == 1)
                phi(i, j) = t;
            else {
                double t2 = 2 * t * t1 - t0;
                t0 = t1;
                t1 = t2;
                phi(i, j) = t2;
            }
        }
    }
    std::vector<double> sval(n);
    for (int i = 0; i < n; ++i) sval[i] = S(grid[i]);

    // column: sign +1 -> u_i (A = [phi_i; 1], c = -S_i),
    //         sign -1 -> v_i (A = [-phi_i; 1], c = +S_i)
    auto col_of = [&](int i, int sign, Vec& out) {
        for (int j = 0; j <= s; ++j) out(j) = sign * phi(i, j);
        out(s + 1) = 1;
    };
    auto cost_of = [&](int i, int sign) { return -sign * sval[i]; };

    // Initial basis: s+2 spread points; the signed null vector of the
    // moment rows alternates, giving a feasible basic solution.
    std::vector<int> bi(m), bsign(m);
    for (int k = 0; k < m; ++k)
        bi[k] = static_cast<int>(std::lround((n - 1) * 0.5 *
                                             (1 - std::cos(M_PI * k / (m - 1)))));
    for (int k = 1; k < m; ++k)
        if (bi[k] <= bi[k - 1]) bi[k] = bi[k - 1] + 1;
    {
        Mat msub(s + 1, m);
        for (int k = 0; k < m; ++k)
            for (int j = 0; j <= s; ++j) msub(j, k) = phi(bi[k], j);
        // null space via full-pivot LU kernel
        Eigen::FullPivLU<Mat> lu(msub);
        Mat ker = lu.kernel();
        Vec w = ker.col(0);
        for (int k = 0; k < m; ++k) {
            if (w(k) == 0) throw std::runtime_error("lp oracle: degenerate start");
            bsign[k] = w(k) > 0 ? 1 : -1;
        }
    }

    Mat B(m, m);
    Vec cB(m), colbuf(m);
    const int max_iter = 50000;
    for (int iter = 0; iter < max_iter; ++iter) {
        for (int k = 0; k < m; ++k) {
            col_of(bi[k], bsign[k], colbuf);
            B.col(k) = colbuf;
            cB(k) = cost_of(bi[k], bsign[k]);
        }
        Eigen::PartialPivLU<Mat> lu(B);
        Vec rhs = Vec::Zero(m);
        rhs(s + 1) = 1;
        Vec xB = lu.solve(rhs);
        Vec y = lu.transpose().solve(cB);

        // pricing
        int enter_i = -1, enter_sign = 0;
        double best_rc = 1e-12;
        for (int i = 0; i < n; ++i) {
            double ydotphi = y(s + 1);
            for (int j = 0; j <= s; ++j) ydotphi += y(j) * phi(i, j);
            double rc_u = -sval[i] - ydotphi;  // maximize: enter if rc > 0
            double ydotphi_v = y(s + 1);
            for (int j = 0; j <= s; ++j) ydotphi_v -= y(j) * phi(i, j);
            double rc_v = sval[i] - ydotphi_v;
            if (rc_u > best_rc) {
                best_rc = rc_u;
                enter_i = i;
                enter_sign = 1;
            }
            if (rc_v > best_rc) {
                best_rc = rc_v;
                enter_i = i;
                enter_sign = -1;
            }
        }
        if (enter_i < 0) {
            double obj = 0;
            for (int k = 0; k < m; ++k) obj += cB(k) * xB(k);
            return obj;
        }

        col_of(enter_i, enter_sign, colbuf);
        Vec dir = lu.solve(colbuf);
        int leave = -1;
        double best_ratio = 0;
        for (int k = 0; k < m; ++k) {
            if (dir(k) > 1e-14) {
                double ratio = xB(k) / dir(k);
                if (leave < 0 || ratio < best_ratio) {
                    best_ratio = ratio;
                    leave = k;
                }
            }
        }
        if (leave < 0) throw std::runtime_error("lp oracle: unbounded");
        bi[leave] = enter_i;
        bsign[leave] = enter_sign;
    }
    throw std::runtime_error("lp oracle: iteration cap exceeded");
}

// Chebyshev-distributed grid on [0,1] (clusters at both endpoints, which
// the discrete minimax needs to resolve boundary oscillation lobes).
inline std::vector<double> chebyshev_grid(int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = 0.5 * (1 - std::cos(M_PI * i / (n - 1)));
    return g;
}

// ---------------------------------------------------------------------------
// Exact binomial upper tail P(Bin(n, p) >= z), long double accumulation.
// ---------------------------------------------------------------------------
inline long double binomial_upper_tail(int n, double p, int z) {
    if (z <= 0) return 1.0L;
    if (z > n) return 0.0L;
    long double lp = std::log(static_cast<long double>(p));
    long double lq = std::log1p(static_cast<long double>(-p));
    long double acc = 0;
    for (int j = z; j <= n; ++j) {
        long double lt = lgammal(n + 1.0L) - lgammal(j + 1.0L) -
                         lgammal(n - j + 1.0L) + j * lp + (n - j) * lq;
        acc += expl(lt);
    }
    return acc;
}

// Simple deterministic brute-force trapezoid integral for cross checks.
inline double trapezoid(const std::function<double(double)>& f, double a, double b,
                        int n) {
    double h = (b - a) / n;
    double acc = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) acc += f(a + i * h);
    return acc * h;
}

}  // namespace oracles
