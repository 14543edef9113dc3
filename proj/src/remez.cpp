#include "lplb/remez.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace lplb::remez {

namespace {

using LD = long double;
using MatLD = Eigen::Matrix<LD, Eigen::Dynamic, Eigen::Dynamic>;
using VecLD = Eigen::Matrix<LD, Eigen::Dynamic, 1>;

// Clenshaw for sum_j c_j T_j(2x-1).
LD clenshaw(const std::vector<LD>& c, LD x) {
    LD t = 2 * x - 1;
    LD b1 = 0, b2 = 0;
    for (int j = static_cast<int>(c.size()) - 1; j >= 1; --j) {
        LD b0 = 2 * t * b1 - b2 + c[j];
        b2 = b1;
        b1 = b0;
    }
    return t * b1 - b2 + c[0];
}

struct Engine {
    const ScalarFun& S;
    int s;
    std::vector<LD> coef;  // Chebyshev coefficients of current iterate
    std::vector<LD> ref;   // s+2 reference points, increasing
    LD E = 0;              // leveled error of current solve

    explicit Engine(const ScalarFun& fn, int deg) : S(fn), s(deg) {
        ref.resize(s + 2);
        for (int i = 0; i <= s + 1; ++i)
            ref[i] = 0.5L * (1 - std::cos(static_cast<LD>(M_PI) * i / (s + 1)));
    }

    LD err(LD x) const {
        return static_cast<LD>(S.value(static_cast<double>(x))) - clenshaw(coef, x);
    }

    // Solve for coefficients + leveled error on the current reference.
    void solve() {
        const int n = s + 2;
        MatLD A(n, n);
        VecLD rhs(n);
        for (int i = 0; i < n; ++i) {
            LD t = 2 * ref[i] - 1;
            LD t0 = 1, t1 = t;
            for (int j = 0; j <= s; ++j) {
                if (j == 0)
                    A(i, j) = 1;
                else if (j == 1)
                    A(i, j) = t;
                else {
                    LD t2 = 2 * t * t1 - t0;
                    t0 = t1;
                    t1 = t2;
                    A(i, j) = t2;
                }
            }
            A(i, s + 1) = (i % 2 == 0) ? 1 : -1;
            rhs(i) = static_cast<LD>(S.value(static_cast<double>(ref[i])));
        }
        VecLD x = A.partialPivLu().solve(rhs);
        coef.assign(s + 1, 0);
        for (int j = 0; j <= s; ++j) coef[j] = x(j);
        E = std::abs(x(s + 1));
    }

    // Global max of |err| on a Chebyshev scan, refined by golden section.
    std::pair<LD, LD> scan_max(int npts) const {
        LD best_x = 0, best_v = -1;
        LD prev2x = -1, prevx = -1, prev2v = 0, prevv = 0;
        for (int i = 0; i <= npts; ++i) {
            LD x = 0.5L * (1 - std::cos(static_cast<LD>(M_PI) * i / npts));
            LD v = std::abs(err(x));
            // local-max bracket around the previous point
            if (i >= 2 && prevv >= prev2v && prevv >= v) {
                auto [rx, rv] = golden(prev2x, x);
                if (rv > best_v) {
                    best_v = rv;
                    best_x = rx;
                }
            }
            if (v > best_v) {
                best_v = v;
                best_x = x;
            }
            prev2x = prevx;
            prev2v = prevv;
            prevx = x;
            prevv = v;
        }
        return {best_x, best_v};
    }

    std::pair<LD, LD> golden(LD a, LD b) const {
        const LD invphi = 0.6180339887498948482L;
        LD c = b - invphi * (b - a);
        LD d = a + invphi * (b - a);
        LD fc = std::abs(err(c)), fd = std::abs(err(d));
        for (int i = 0; i < 90 && (b - a) > 1e-18L * (1 + b); ++i) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - invphi * (b - a);
                fc = std::abs(err(c));
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + invphi * (b - a);
                fd = std::abs(err(d));
            }
        }
        LD x = 0.5L * (a + b);
        return {x, std::abs(err(x))};
    }

    // Single-point exchange preserving sign alternation.
    void exchange(LD x_star) {
        const int n = s + 2;
        int sign_star = err(x_star) >= 0 ? 1 : -1;
        if (x_star < ref.front()) {
            int sign0 = err(ref.front()) >= 0 ? 1 : -1;
            if (sign_star == sign0) {
                ref.front() = x_star;
            } else {
                for (int i = n - 1; i > 0; --i) ref[i] = ref[i - 1];
                ref[0] = x_star;
            }
            return;
        }
        if (x_star > ref.back()) {
            int signl = err(ref.back()) >= 0 ? 1 : -1;
            if (sign_star == signl) {
                ref.back() = x_star;
            } else {
                for (int i = 0; i + 1 < n; ++i) ref[i] = ref[i + 1];
                ref.back() = x_star;
            }
            return;
        }
        // interior: x_star lies in [ref[k], ref[k+1]) for some k
        int k = static_cast<int>(std::upper_bound(ref.begin(), ref.end(), x_star) -
                                 ref.begin()) - 1;
        k = std::clamp(k, 0, n - 2);
        int signk = err(ref[k]) >= 0 ? 1 : -1;
        ref[sign_star == signk ? k : k + 1] = x_star;
    }
};

std::vector<double> cheb_to_mono(const std::vector<LD>& c) {
    const int n = static_cast<int>(c.size());
    // T_j(2x-1) in monomials, built by the three-term recurrence.
    std::vector<std::vector<LD>> T(n);
    T[0] = {1};
    if (n > 1) T[1] = {-1, 2};
    for (int j = 2; j < n; ++j) {
        // T_j = 2(2x-1) T_{j-1} - T_{j-2}
        std::vector<LD> cur(j + 1, 0);
        for (size_t i = 0; i < T[j - 1].size(); ++i) {
            cur[i + 1] += 4 * T[j - 1][i];
            cur[i] -= 2 * T[j - 1][i];
        }
        for (size_t i = 0; i < T[j - 2].size(); ++i) cur[i] -= T[j - 2][i];
        T[j] = std::move(cur);
    }
    std::vector<LD> mono(n, 0);
    for (int j = 0; j < n; ++j)
        for (size_t i = 0; i < T[j].size(); ++i) mono[i] += c[j] * T[j][i];
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) out[j] = static_cast<double>(mono[j]);
    return out;
}

Result snapshot(const Engine& eng, LD varpi, int iters) {
    Result r;
    r.s = eng.s;
    r.cheb.assign(eng.coef.begin(), eng.coef.end());
    r.mono = cheb_to_mono(eng.coef);
    r.varpi = static_cast<double>(varpi);
    r.leveled_error = static_cast<double>(eng.E);
    r.ref.assign(eng.ref.begin(), eng.ref.end());
    r.ref_err.resize(eng.ref.size());
    for (size_t i = 0; i < eng.ref.size(); ++i)
        r.ref_err[i] = static_cast<double>(eng.err(eng.ref[i]));
    r.iterations = iters;
    return r;
}

}  // namespace

double Result::eval(double x) const {
    std::vector<LD> c(cheb.begin(), cheb.end());
    return static_cast<double>(clenshaw(c, static_cast<LD>(x)));
}

Result best_poly_approx(const ScalarFun& S, int s, const Options& opt) {
    if (s < 0) throw std::invalid_argument("best_poly_approx: s must be >= 0");

    Engine eng(S, s);
    LD best_gap = std::numeric_limits<LD>::infinity();
    for (int it = 1; it <= opt.max_iterations; ++it) {
        eng.solve();
        auto [x_star, e_max] = eng.scan_max(opt.scan_points);
        LD gap = e_max - eng.E;
        best_gap = std::min(best_gap, std::abs(gap));
        if (gap <= opt.rel_tol * eng.E + static_cast<LD>(opt.abs_floor))
            return snapshot(eng, e_max, it);
        eng.exchange(x_star);
    }
    eng.solve();
    auto [x_star, e_max] = eng.scan_max(opt.scan_points);
    (void)x_star;
    throw ConvergenceError("best_poly_approx: no convergence after max iterations",
                           snapshot(eng, e_max, opt.max_iterations),
                           static_cast<double>(e_max - eng.E));
}

}  // namespace lplb::remez
