#pragma once

#include <random>
#include <vector>

namespace lplb::family {

// The 1-d smooth bump c * exp(-1/(1-u^2)) on [-1,1], c chosen so the
// mass is 1. All derived quantities are computed once and cached in the
// shared instance; the type is immutable afterwards.
class Bump1D {
  public:
    static const Bump1D& instance();

    double value(double u) const;
    double max_value() const { return peak_; }

    // int_{-1}^{1} value(u)^z du  (z >= 1 or any z > 0)
    double pow_integral(double z) const;
    // int value * ln(value)
    double log_integral() const { return log_integral_; }
    // CDF Phi(u) = int_{-1}^{u} value; clamped outside [-1,1]
    double cdf(double u) const;
    // int_{-1}^{1} Phi(u)^p du
    double cdf_pow_integral(double p) const;
    // int_{-1}^{1} Phi ln Phi
    double cdf_log_integral() const { return cdf_log_integral_; }

    double sample(std::mt19937_64& gen) const;

  private:
    Bump1D();
    double norm_ = 0;  // 1 / int exp(-1/(1-u^2))
    double peak_ = 0;
    double log_integral_ = 0;
    double cdf_log_integral_ = 0;
    std::vector<double> cdf_;  // uniform table on [-1,1]
};

// Product bump profile on R^d, supported on [-1,1]^d with unit mass.
struct BumpProfile {
    int d = 1;

    double value(const double* x) const;
    // ||Lambda||_z; z = inf gives the sup norm
    double norm(double z) const;
    double norm_pow(double z) const;  // ||Lambda||_z^z (finite z)
    double log_integral() const;      // int Lambda ln Lambda
    void sample(std::mt19937_64& gen, double* out) const;
};

}  // namespace lplb::family
