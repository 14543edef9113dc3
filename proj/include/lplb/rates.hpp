#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Rate exponents and regime classification for minimax estimation of
// L_p norms (and related functionals) of a density over an anisotropic
// Nikolskii ball intersected with an integral-norm ball B_q(Q).
//
// Everything in this header is a pure function of the class parameters;
// no state, safe for concurrent use.

namespace lplb::rates {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Smoothness/integrability description of the function class.
// d coordinates, direction-wise smoothness beta_j measured in L_{r_j}
// with radii L_j; the functional index p > 1 and the extra bound q
// on ||f||_q. Values of r_j and q may be +infinity.
struct ClassParams {
    int d = 1;
    std::vector<double> beta;  // beta_j > 0
    std::vector<double> r;     // r_j in [1, inf]
    std::vector<double> L;     // L_j > 0
    double p = 2.0;
    double q = kInf;

    // Throws std::invalid_argument on any violated constraint, in
    // particular q < max(p, r*), which the theory does not cover.
    void validate() const;

    double r_star() const;  // max_j r_j
};

// Scalars derived from ClassParams that all rate formulas run on.
struct DerivedScales {
    double inv_beta = 0;   // 1/beta = sum 1/beta_j
    double inv_omega = 0;  // 1/omega = sum 1/(beta_j r_j)
    double bbL = 1;        // prod L_j^{1/beta_j}

    // tau(s) = 1 - 1/omega + (1/beta)/s, defined for s in [1, inf].
    double tau(double s) const;
};

DerivedScales derive(const ClassParams& params);

// tau(s) for validated parameters; rejects s < 1.
double tau(const ClassParams& params, double s);

enum class Regime {
    IntegerCase1,
    IntegerCase2,
    IntegerCase3,
    NonIntCase1,
    NonIntCase2,
    NonIntCase3,
    Inconsistent,
    Parametric,
};

const char* to_string(Regime r);

// Rate of the minimax risk written as
//   L^{constant_exponent} * n^{-exponent} * (ln n)^{log_exponent}.
struct RateResult {
    double exponent = 0;           // power of 1/n (theta* or vartheta)
    double log_exponent = 0;       // power of ln n (0 when none)
    double constant_exponent = 0;  // power of bbL, (1-1/p)/tau(1)
    double theta = 0;              // raw case value before the 1/2 cap
    Regime regime = Regime::IntegerCase1;
    std::string note;              // diagnostics for corner parameters
};

// Lower-bound rate for integer p >= 2. Flags Regime::Inconsistent for
// q = p, r* <= p, tau(p) <= 0 where no uniformly consistent estimator
// exists; other corners return the formula value with a note.
RateResult rate_integer(const ClassParams& params);

// Lower-bound rate for non-integer p > 1, including the (ln n) power.
RateResult rate_noninteger(const ClassParams& params);

// Density-estimation L_p-loss lower-bound exponent tau(p)/tau(1).
// Valid only for r* <= p, q = p and 0 < tau(p) < 1 - 1/p (non-integer p)
// or 0 < tau(p) < 1 (integer p); rejects parameters outside that zone.
double rate_lp_loss(const ClassParams& params);

enum class DSet { D1, D2, Neither };

struct DClassification {
    DSet set = DSet::Neither;
    std::optional<double> gamma1;  // lower log-exponent (adds to -2p)
    std::optional<double> gamma2;  // upper log-exponent
};

// Classification of (beta, r) into the zones where the plug-in
// estimator is nearly rate-optimal adaptive; requires non-integer p
// and q = infinity.
DClassification classify_D_sets(const ClassParams& params);

enum class FunctionalKind { Entropy, TsallisP };

// Purely logarithmic lower-bound rates: differential entropy decays as
// (ln n)^{-3}, the Tsallis functional with index p in (0,1) as
// (ln n)^{-2p}. The polynomial exponent is zero in both cases.
RateResult rate_functional(FunctionalKind kind, double p = 0.5);

bool is_integer_p(double p);

}  // namespace lplb::rates
