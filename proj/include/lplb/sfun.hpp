#pragma once

#include <gmpxx.h>

#include <functional>
#include <memory>
#include <string>

namespace lplb {

using Rat = mpq_class;

// A continuous function S on [0,1] used as approximation target and as
// integrand against prior measures. Closed-form hooks, when present,
// keep the moment algebra exact: moment_c(k) = int_0^1 S(x) x^k dx and
// square_integral() = int_0^1 S^2 must be exact rationals (any double
// parameter is itself dyadic, so these exist for the whole registry).
struct ScalarFun {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> antider;  // F(x) = int_0^x S, F(0) = 0
    // int_u^v x^z S(x) dx in closed form; null -> quadrature fallback
    std::function<double(double, double, double)> weighted_integral;
    std::function<Rat(int)> moment_c;
    std::function<Rat()> square_integral;
};

using ScalarFunPtr = std::shared_ptr<const ScalarFun>;

// S(x) = x^p for p > 0 (non-integer allowed).
ScalarFunPtr power_fun(double p);

// S(x) = x ln x, extended by continuity with S(0) = 0.
ScalarFunPtr xlogx_fun();

// Parse "power:2.5" or "entropy" (the latter is x ln x).
ScalarFunPtr parse_sfun(const std::string& spec);

}  // namespace lplb
