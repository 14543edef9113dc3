#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

namespace lplb::poly {

using Rat = mpq_class;

// Dense univariate polynomial with exact rational coefficients,
// c[j] multiplying x^j.
struct RatPoly {
    std::vector<Rat> coef;

    int degree() const;  // index of last nonzero coefficient, 0 if zero
    bool is_zero() const;
    Rat eval(const Rat& x) const;
    double eval_d(double x) const;
    RatPoly derivative() const;
    // Antiderivative with zero constant term.
    RatPoly antiderivative() const;
    // int_u^v of this polynomial, exact.
    Rat integral(const Rat& u, const Rat& v) const;
};

// Sturm chain of P (works for non-squarefree input: the chain then
// counts distinct roots).
std::vector<RatPoly> sturm_chain(const RatPoly& p);

// Number of distinct real roots in (lo, hi].
int count_roots(const std::vector<RatPoly>& chain, const Rat& lo, const Rat& hi);

// Distinct real roots of p in [lo, hi], each bracketed to width <= width_tol
// (dyadic endpoints). Returned sorted; exact rational roots come back as
// zero-width brackets.
std::vector<std::pair<Rat, Rat>> isolate_roots(const RatPoly& p, const Rat& lo,
                                               const Rat& hi,
                                               const Rat& width_tol);

}  // namespace lplb::poly
