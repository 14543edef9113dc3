#pragma once

#include <cstdint>
#include <vector>

namespace lplb::special {

// Regularized lower incomplete gamma P(a, x); Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Chi-square survival function and quantile (k degrees of freedom).
double chi2_sf(double x, double k);
double chi2_quantile(double prob, double k);

// Compensated (Kahan) accumulator.
struct KahanSum {
    double sum = 0, c = 0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

}  // namespace lplb::special
