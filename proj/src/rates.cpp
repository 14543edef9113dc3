#include "lplb/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lplb::rates {

namespace {

double over(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

}  // namespace

bool is_integer_p(double p) {
    return std::abs(p - std::round(p)) < 1e-12 && p >= 1.0;
}

void ClassParams::validate() const {
    if (d < 1) throw std::invalid_argument("ClassParams: d must be >= 1");
    if (static_cast<int>(beta.size()) != d || static_cast<int>(r.size()) != d ||
        static_cast<int>(L.size()) != d)
        throw std::invalid_argument("ClassParams: beta, r, L must have length d");
    for (double b : beta)
        if (!(b > 0)) throw std::invalid_argument("ClassParams: beta_j must be > 0");
    for (double rr : r)
        if (!(rr >= 1)) throw std::invalid_argument("ClassParams: r_j must be >= 1");
    for (double l : L)
        if (!(l > 0)) throw std::invalid_argument("ClassParams: L_j must be > 0");
    if (!(p > 1)) throw std::invalid_argument("ClassParams: p must be > 1");
    if (!(q >= 1)) throw std::invalid_argument("ClassParams: q must be >= 1");
    if (q < std::max(p, r_star()))
        throw std::invalid_argument(
            "ClassParams: q must be >= max(p, r*); smaller q is not covered");
}

double ClassParams::r_star() const {
    return *std::max_element(r.begin(), r.end());
}

DerivedScales derive(const ClassParams& params) {
    params.validate();
    DerivedScales s;
    for (int j = 0; j < params.d; ++j) {
        s.inv_beta += 1.0 / params.beta[j];
        s.inv_omega += over(params.r[j]) / params.beta[j];
        s.bbL *= std::pow(params.L[j], 1.0 / params.beta[j]);
    }
    return s;
}

double DerivedScales::tau(double s) const {
    if (!(s >= 1))
        throw std::invalid_argument("tau: s must lie in [1, inf]");
    return 1.0 - inv_omega + inv_beta * over(s);
}

double tau(const ClassParams& params, double s) {
    return derive(params).tau(s);
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::IntegerCase1: return "IntegerCase1";
        case Regime::IntegerCase2: return "IntegerCase2";
        case Regime::IntegerCase3: return "IntegerCase3";
        case Regime::NonIntCase1: return "NonIntCase1";
        case Regime::NonIntCase2: return "NonIntCase2";
        case Regime::NonIntCase3: return "NonIntCase3";
        case Regime::Inconsistent: return "Inconsistent";
        case Regime::Parametric: return "Parametric";
    }
    return "?";
}

RateResult rate_integer(const ClassParams& params) {
    if (!is_integer_p(params.p) || params.p < 2)
        throw std::invalid_argument("rate_integer: p must be an integer >= 2");
    const DerivedScales sc = derive(params);
    const double p = std::round(params.p);
    const double q = params.q;
    const double tau1 = sc.tau(1), taup = sc.tau(p), tauq = sc.tau(q);

    RateResult res;
    res.constant_exponent = (1.0 - 1.0 / p) / tau1;

    if (params.q == params.p && params.r_star() <= p && taup <= 0) {
        res.regime = Regime::Inconsistent;
        res.note = "q = p, r* <= p and tau(p) <= 0: no uniformly consistent estimator";
        res.theta = 0;
        res.exponent = 0;
        return res;
    }

    if (taup >= 1) {
        res.theta = 1.0 / tau1;
        res.regime = Regime::IntegerCase1;
    } else if (tauq < 0) {
        res.theta = (1.0 / p - over(q)) / (1.0 - over(q) - (1.0 - 1.0 / p) * tauq);
        res.regime = Regime::IntegerCase2;
    } else {
        res.theta = taup / tau1;
        res.regime = Regime::IntegerCase3;
        if (taup <= 0)
            res.note = "tau(p) <= 0 outside the stated inconsistency zone; formula value returned";
    }
    res.exponent = std::min(0.5, res.theta);
    if (res.theta >= 0.5) res.regime = Regime::Parametric;
    return res;
}

RateResult rate_noninteger(const ClassParams& params) {
    if (is_integer_p(params.p))
        throw std::invalid_argument("rate_noninteger: p must not be an integer");
    const DerivedScales sc = derive(params);
    const double p = params.p, q = params.q;
    const double tau1 = sc.tau(1), taup = sc.tau(p), tauq = sc.tau(q);

    RateResult res;
    res.constant_exponent = (1.0 - 1.0 / p) / tau1;

    if (params.q == params.p && taup == 0) {
        res.regime = Regime::Inconsistent;
        res.note = "q = p and tau(p) = 0: no uniformly consistent estimator";
        return res;
    }

    double vartheta_star;
    if (taup >= 1.0 - 1.0 / p) {
        res.theta = (1.0 - 1.0 / p) / tau1;
        res.exponent = std::min(0.5, res.theta);
        vartheta_star = (2.0 * (1.0 - 1.0 / p) - taup) / tau1;
        res.regime = Regime::NonIntCase1;
    } else if (tauq < 0) {
        res.theta = (1.0 / p - over(q)) / (1.0 - over(q) - tauq);
        res.exponent = res.theta;
        vartheta_star = res.exponent;
        res.regime = Regime::NonIntCase2;
        if (params.q == params.p)
            res.note = "q = p and tau(p) < 0: logarithmic lower bound; "
                       "consistency status is out of scope";
    } else {
        res.theta = taup / tau1;
        res.exponent = std::min(0.5, res.theta);
        vartheta_star = 2.0 * p;
        res.regime = Regime::NonIntCase3;
    }
    res.log_exponent = vartheta_star - 2.0 * p;
    return res;
}

double rate_lp_loss(const ClassParams& params) {
    const DerivedScales sc = derive(params);
    const double p = params.p;
    if (params.r_star() > p || params.q != params.p)
        throw std::invalid_argument("rate_lp_loss: requires r* <= p and q = p");
    const double taup = sc.tau(p);
    const double hi = is_integer_p(p) ? 1.0 : 1.0 - 1.0 / p;
    if (!(taup > 0 && taup < hi)) {
        std::ostringstream msg;
        msg << "rate_lp_loss: tau(p) = " << taup << " outside (0, " << hi << ")";
        throw std::invalid_argument(msg.str());
    }
    return taup / sc.tau(1);
}

DClassification classify_D_sets(const ClassParams& params) {
    if (is_integer_p(params.p))
        throw std::invalid_argument("classify_D_sets: p must not be an integer");
    if (!std::isinf(params.q))
        throw std::invalid_argument("classify_D_sets: requires q = infinity");
    const DerivedScales sc = derive(params);
    const double p = params.p;
    const double taup = sc.tau(p), tauinf = sc.tau(kInf);

    DClassification out;
    if (taup > 2.0 * (1.0 - 1.0 / p)) {
        out.set = DSet::D1;
        out.gamma1 = (2.0 * (1.0 - 1.0 / p) - taup) / sc.tau(1);
        out.gamma2 = params.d - 1 + (1.0 - 1.0 / p) / sc.tau(1);
    } else if (taup < 1.0 - 2.0 / p && tauinf < 0) {
        out.set = DSet::D2;
        const double omega_over_p = (1.0 / sc.inv_omega) / p;
        out.gamma1 = omega_over_p;
        out.gamma2 = omega_over_p;
    }
    return out;
}

RateResult rate_functional(FunctionalKind kind, double p) {
    RateResult res;
    res.regime = Regime::NonIntCase3;  // log-rate zone of the machinery
    switch (kind) {
        case FunctionalKind::Entropy:
            res.log_exponent = -3.0;
            res.note = "differential entropy";
            break;
        case FunctionalKind::TsallisP:
            if (!(p > 0 && p < 1))
                throw std::invalid_argument("rate_functional: Tsallis index must be in (0,1)");
            res.log_exponent = -2.0 * p;
            res.note = "Tsallis functional";
            break;
    }
    return res;
}

}  // namespace lplb::rates
