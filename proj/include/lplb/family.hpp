#pragma once

#include <random>
#include <string>
#include <vector>

#include "lplb/bump.hpp"

namespace lplb::family {

// Base density f_0 on the negative orthant: per coordinate, the smooth
// bump convolved with the uniform indicator of [-N-1,-1] (scaled by a).
// Its one-dimensional factor g is exactly 1/N on [-N, -2], with smooth
// shoulders of width 2 on both sides, which gives closed expressions for
// all power norms in terms of two N-free bump constants.
class BaseDensity {
  public:
    BaseDensity(int d, double N, double a);

    int dim() const { return d_; }
    double N() const { return N_; }
    double scale() const { return a_; }

    double eval(const double* x) const;
    double eval1(double v) const;  // one-coordinate factor a*g(a v)
    void sample(std::mt19937_64& gen, double* out) const;

    double lp_pow(double p) const;   // ||f0||_p^p
    double norm(double q) const;     // ||f0||_q, q = inf allowed
    double log_integral() const;     // int f0 ln f0
    double support_lo() const { return -(N_ + 2.0) / a_; }

  private:
    int d_;
    double N_, a_;
};

// Smallest N >= 4 with ||f0||_q <= Q/2 for the given scale.
BaseDensity build_base(int d, double q, double Q, double a = 1.0);

// N solving ||f0||_p^p = target (monotone bisection), never below n_min.
double calibrate_base_N(int d, double a, double p, double target, double n_min);

// The (G, H) functional with the S / S_0 decomposition hooks.
struct Functional {
    enum class Kind { LpNorm, IntegralPower, Entropy, Tsallis, Renyi };
    Kind kind = Kind::LpNorm;
    double p = 2.0;  // index; unused for Entropy

    static Functional lp_norm(double p) { return {Kind::LpNorm, p}; }
    static Functional integral_power(double p) { return {Kind::IntegralPower, p}; }
    static Functional entropy() { return {Kind::Entropy, 0}; }
    static Functional tsallis(double p) { return {Kind::Tsallis, p}; }
    static Functional renyi(double p) { return {Kind::Renyi, p}; }
    static Functional parse(const std::string& spec);

    double G(double y) const;
    double H(double y) const;
    // S(z) = int H(z Lambda) over [-1,1]^d, closed form
    double S(double z, const BumpProfile& prof) const;
    // S_0(z) = int H((1-z) f_0), closed form
    double S0(double z, const BaseDensity& base) const;
    // local modulus of continuity of S_0 at x0 with radius delta
    double eta_S0(double x0, double delta, const BaseDensity& base) const;
    std::string name() const;
};

// The parameterized family f_w = [1 - A m rho_w(1)] f_0 + A sum w_m Lambda_m
// with Lambda_m(x) = Lambda((x - x_m)/sigma) (unit-mass bumps scaled by
// sigma; the mixing amplitude A appears exactly once so that
// int f_w = 1 for every w in [0,1]^M).
class DensityFamily {
  public:
    DensityFamily(int d, long M, double A, std::vector<double> sigma,
                  BaseDensity base, double e1);

    int dim() const { return d_; }
    long bumps() const { return M_; }
    double amplitude() const { return A_; }
    const std::vector<double>& sigma() const { return sigma_; }
    double m_vol() const { return m_vol_; }
    const BaseDensity& base() const { return base_; }
    const BumpProfile& profile() const { return profile_; }
    double e1() const { return e1_; }

    // A m / (1 - A m M e1); the likelihood-factor exponent scale
    double D() const;

    void center(long m, double* out) const;
    // index of the bump rectangle containing x, or -1
    long bump_index(const double* x) const;

    double rho1(const std::vector<double>& w) const;  // sum w_m
    double eval(const std::vector<double>& w, const double* x) const;

    // n i.i.d. draws from f_w, flattened row-major (n x d).
    std::vector<double> sample(const std::vector<double>& w, long n,
                               std::mt19937_64& gen) const;

  private:
    int d_;
    long M_;
    double A_;
    std::vector<double> sigma_;
    double m_vol_;
    BaseDensity base_;
    BumpProfile profile_;
    double e1_;
    long grid_side_;
};

// G(S0(A m rho_w(1)) + m sum_m S(A w_m)) -- the closed-form decomposition
// of Psi(f_w).
double functional_value(const DensityFamily& fam, const std::vector<double>& w,
                        const Functional& F);

}  // namespace lplb::family
