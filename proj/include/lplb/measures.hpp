#pragma once

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "lplb/polynomial.hpp"
#include "lplb/sfun.hpp"

// Moment-matched pairs of probability measures on [0,1]: the exact
// Hilbert-matrix route (pair matched in all moments 1..s except one
// index t) and the best-approximation route (pair matched in moments
// 1..s but separated by a target functional S).

namespace lplb::measures {

using Rat = mpq_class;

struct Atom {
    double x = 0;
    double mass = 0;
};

// One density piece of a measure: on [lo, hi] the density equals
// poly(x) + sfun_coef * S(x); sfun is null for pure polynomial pieces.
struct Piece {
    double lo = 0, hi = 0;
    std::vector<double> poly;
    double sfun_coef = 0;
    ScalarFunPtr sfun;

    double eval(double x) const;
};

class MomentMeasure {
  public:
    std::vector<Atom> atoms;
    std::vector<Piece> pieces;

    // e(z) = int_0^1 x^z d(this), z >= 0. Closed form on polynomial
    // pieces and registered S parts, quadrature otherwise.
    double moment(double z) const;

    // int f d(this), numeric.
    double integrate(const std::function<double(double)>& f) const;

    double mass() const { return moment(0.0); }

    // Mass-1 and piecewise nonnegativity (Chebyshev sample points plus
    // endpoints); throws on violation.
    void check_valid(double tol = 1e-12) const;
};

// Exact-rational certificate data attached to a constructed pair.
struct PairCertificate {
    int s = 0;
    int t = -1;                      // mismatch index (prop1 only)
    double l1_norm = 0;              // ||P||_L1 resp. ||K||_L1
    double diag_inverse_tt = 0;      // [M_s^{-1}]_{t,t} (prop1)
    double paper_c_st = 0;           // sqrt(2t-1)((t-1)!)^2 (s-t)!/(s+t-1)!
    double varpi = 0;                // best-approximation error (prop2)
    double max_moment_mismatch = 0;  // numeric, over matched moments
    bool exact_moments_verified = false;
};

struct MeasurePair {
    MomentMeasure mu, nu;
    int matched_upto = 0;
    std::optional<int> mismatch_index;
    double gap = 0;  // e_mu(t) - e_nu(t), resp. int S d(mu - nu)
    PairCertificate cert;

    double e_star(double z) const;  // max of the two moments
    double e_low(double z) const;   // min of the two moments

    // e_pi(z) >= 1/2 and sqrt(e_pi(2z)) <= 2 e_pi(z) on a z-grid.
    void check_moment_floor(const std::vector<double>& zs) const;
};

// Exact solve M_s x = rhs for the (s+1)x(s+1) Hilbert matrix
// M_s = {1/(i+j+1)}, i,j = 0..s.
std::vector<Rat> hilbert_inverse_apply(int s, const std::vector<Rat>& rhs);

// M_s * x, exact (round-trip checks).
std::vector<Rat> hilbert_apply(int s, const std::vector<Rat>& x);

// Pair with e_mu(k) = e_nu(k) for k = 1..s, k != t, and
// e_mu(t) - e_nu(t) = 1/||P||_L1 where M_s a = e_t and P = P_{s,a}.
MeasurePair build_pair_prop1(int s, int t);

// Pair matched in moments 1..s with int S d(mu-nu) = varpi_s(S)/||K||_L1.
// varpi, when not supplied, is computed by the Remez routine.
MeasurePair build_pair_prop2(const ScalarFunPtr& S, int s);
MeasurePair build_pair_prop2(const ScalarFunPtr& S, int s, double varpi);

// Exact draw from a MomentMeasure (atoms + rejection on pieces).
class MeasureSampler {
  public:
    explicit MeasureSampler(const MomentMeasure& m);
    double operator()(std::mt19937_64& gen) const;

  private:
    struct PieceBox {
        double lo, hi, bound, mass;
        const Piece* piece;
    };
    std::vector<Atom> atoms_;
    std::vector<PieceBox> boxes_;
    double total_ = 0;
};

}  // namespace lplb::measures
