#pragma once

#include <stdexcept>
#include <vector>

#include "lplb/sfun.hpp"

namespace lplb::remez {

// Best uniform approximation of S on [0,1] by a degree-s polynomial.
// The polynomial is carried in the shifted-Chebyshev basis (stable for
// evaluation); monomial coefficients are provided for interop.
struct Result {
    int s = 0;
    std::vector<double> cheb;      // coefficients of T_j(2x-1)
    std::vector<double> mono;      // monomial coefficients a_0..a_s
    double varpi = 0;              // sup-norm error of the minimax fit
    double leveled_error = 0;      // |E| from the final reference solve
    std::vector<double> ref;       // s+2 equioscillation points
    std::vector<double> ref_err;   // S - P at the reference (alternating)
    int iterations = 0;

    double eval(double x) const;   // Clenshaw on the Chebyshev form
};

struct ConvergenceError : std::runtime_error {
    Result best;
    double residual;
    ConvergenceError(const std::string& what, Result b, double r)
        : std::runtime_error(what), best(std::move(b)), residual(r) {}
};

struct Options {
    int max_iterations = 100;
    // converged when scan_max - |E| <= rel_tol * (|E|) + abs_floor
    double rel_tol = 1e-12;
    double abs_floor = 1e-17;
    int scan_points = 32768;
};

Result best_poly_approx(const ScalarFun& S, int s, const Options& opt = {});

}  // namespace lplb::remez
