#pragma once

#include <functional>
#include <vector>

namespace lplb::quad {

using Fn1 = std::function<double(double)>;

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_depth = 60;
};

// Adaptive Gauss-Kronrod (G7,K15) on [a, b]. The error estimate per
// interval is |K15 - G7|; intervals are bisected until the estimate
// meets the locally apportioned tolerance.
double integrate(const Fn1& f, double a, double b, const Options& opt = {});

// Integrate over [a, b] split at the given interior breakpoints
// (useful when the integrand is only piecewise smooth).
double integrate_cells(const Fn1& f, double a, double b,
                       const std::vector<double>& breaks, const Options& opt = {});

// Tensorized adaptive quadrature over the box [lo, hi] in R^d.
// Integrates coordinate d-1 outermost; inner integrals run at a
// tightened tolerance.
double integrate_box(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& lo, const std::vector<double>& hi,
                     const Options& opt = {});

}  // namespace lplb::quad
