#include "doctest.h"
#include "lplb/rates.hpp"

#include <cmath>
#include <random>

using namespace lplb::rates;

namespace {

ClassParams make(int d, std::vector<double> beta, std::vector<double> r,
                 double p, double q, std::vector<double> L = {}) {
    ClassParams cp;
    cp.d = d;
    cp.beta = std::move(beta);
    cp.r = std::move(r);
    cp.L = L.empty() ? std::vector<double>(d, 1.0) : std::move(L);
    cp.p = p;
    cp.q = q;
    return cp;
}

}  // namespace

TEST_CASE("tau: direct substitutions") {
    CHECK(tau(make(1, {2}, {kInf}, 2, kInf), 1) == doctest::Approx(1.5).epsilon(1e-15));
    // 1/beta = 1.5, 1/omega = 1/2 + 1/8 = 0.625, tau(2) = 1 - 0.625 + 0.75
    CHECK(tau(make(2, {1, 2}, {2, 4}, 2, 4), 2) == doctest::Approx(1.125).epsilon(1e-15));
    auto cp = make(2, {1, 2}, {2, 4}, 2, 4);
    CHECK(tau(cp, kInf) == doctest::Approx(1 - 0.625).epsilon(1e-15));
    CHECK_THROWS_AS(tau(cp, 0.5), std::invalid_argument);
}

TEST_CASE("tau: strictly decreasing in s") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> ub(0.2, 5.0), ur(1.0, 8.0);
    for (int it = 0; it < 50; ++it) {
        int d = 1 + static_cast<int>(gen() % 3);
        std::vector<double> beta(d), r(d);
        for (int j = 0; j < d; ++j) beta[j] = ub(gen), r[j] = ur(gen);
        auto sc = derive(make(d, beta, r, 2, 64));
        double prev = sc.tau(1);
        for (double s : {1.3, 2.0, 3.5, 10.0, kInf}) {
            double cur = sc.tau(s);
            CHECK(cur < prev);
            prev = cur;
        }
        CHECK(sc.inv_omega <= sc.inv_beta);
    }
}

TEST_CASE("ClassParams validation") {
    CHECK_THROWS_AS(make(1, {1}, {1}, 2, 1.5).validate(), std::invalid_argument);  // q < p
    CHECK_THROWS_AS(make(1, {1}, {4}, 2, 3).validate(), std::invalid_argument);    // q < r*
    CHECK_THROWS_AS(make(1, {-1}, {1}, 2, 2).validate(), std::invalid_argument);
    CHECK_NOTHROW(make(1, {1}, {4}, 2, 4).validate());
}

TEST_CASE("rate_integer: Hoelder reduction theta = beta/(beta+1)") {
    // r = inf  =>  tau(p) = 1 + 1/(beta p) >= 1 for every integer p.
    for (double beta : {0.3, 0.5, 1.0, 2.0, 7.0}) {
        for (double p : {2.0, 3.0, 5.0}) {
            auto res = rate_integer(make(1, {beta}, {kInf}, p, kInf));
            double theta = beta / (beta + 1);
            CHECK(res.theta == doctest::Approx(theta).epsilon(1e-14));
            CHECK(res.exponent == doctest::Approx(std::min(0.5, theta)).epsilon(1e-14));
        }
    }
}

TEST_CASE("rate_integer: case-1 example hits the parametric cap") {
    auto res = rate_integer(make(2, {1, 2}, {2, 4}, 2, 4));
    CHECK(res.theta == doctest::Approx(1.0 / 1.875).epsilon(1e-14));
    CHECK(res.exponent == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(res.regime == Regime::Parametric);
}

TEST_CASE("rate_integer: inconsistency zone") {
    // d=1, beta=1, r=1: 1/omega = 1, tau(s) = 1/s. q = p = 2 gives tau(p) = 0.5 > 0,
    // so consistent; to force tau(p) <= 0 use r = 1 with beta = 0.4:
    // 1/omega = 2.5, tau(2) = 1 - 2.5 + 1.25 = -0.25.
    auto res = rate_integer(make(1, {0.4}, {1}, 2, 2));
    CHECK(res.regime == Regime::Inconsistent);

    CHECK_THROWS_AS(rate_integer(make(1, {1}, {1}, 2.5, 4)), std::invalid_argument);
}

TEST_CASE("rate_integer: continuity across tau(p) = 1") {
    // At tau(p) = 1 cases 1 and 3 agree: 1/tau(1) = tau(p)/tau(1).
    // d=1: tau(p) = 1 - 1/(beta r) + 1/(beta p) = 1 iff r = p... pick
    // beta=1, r=2, p=2, q large: tau(2) = 1 - 1/2 + 1/2 = 1.
    auto at = rate_integer(make(1, {1}, {2}, 2, 8));
    CHECK(at.theta == doctest::Approx(1.0 / tau(make(1, {1}, {2}, 2, 8), 1)).epsilon(1e-14));
    // Slightly rougher class falls into case 3 and approaches the same value.
    auto below = rate_integer(make(1, {0.999}, {2}, 2, 8));
    CHECK(std::abs(below.theta - at.theta) < 2e-3);
}

TEST_CASE("rate_integer/noninteger: permutation invariance and L through bbL") {
    auto a = make(3, {1, 2, 3}, {2, 4, 8}, 2, 16, {1, 2, 3});
    auto b = make(3, {3, 1, 2}, {8, 2, 4}, 2, 16, {3, 1, 2});
    auto ra = rate_integer(a), rb = rate_integer(b);
    CHECK(ra.exponent == doctest::Approx(rb.exponent).epsilon(1e-15));
    CHECK(ra.constant_exponent == doctest::Approx(rb.constant_exponent).epsilon(1e-15));
    CHECK(derive(a).bbL == doctest::Approx(derive(b).bbL).epsilon(1e-15));

    a.p = 2.5;
    b.p = 2.5;
    auto na = rate_noninteger(a), nb = rate_noninteger(b);
    CHECK(na.exponent == doctest::Approx(nb.exponent).epsilon(1e-15));
    CHECK(na.log_exponent == doctest::Approx(nb.log_exponent).epsilon(1e-15));
}

TEST_CASE("rate_noninteger: q = inf reduction") {
    // Zone tau(p) < 1 - 1/p, tau(inf) < 0  =>  vartheta = omega / p.
    // d=1, beta=0.5, r=1.25: 1/omega = 1.6, tau(inf) = -0.6,
    // tau(2.5) = 1 - 1.6 + 0.8 = 0.2 < 1 - 0.4 = 0.6.
    auto cp = make(1, {0.5}, {1.25}, 2.5, kInf);
    auto res = rate_noninteger(cp);
    double omega = 1.0 / derive(cp).inv_omega;
    CHECK(res.exponent == doctest::Approx(omega / 2.5).epsilon(1e-14));
    CHECK(res.regime == Regime::NonIntCase2);
    // log exponent in this zone is vartheta - 2p
    CHECK(res.log_exponent == doctest::Approx(res.exponent - 5.0).epsilon(1e-14));

    // Zone tau(p) >= 1 - 1/p: vartheta = min(1/2, (1-1/p)/tau(1)).
    auto smooth = make(1, {2}, {kInf}, 2.5, kInf);
    auto res2 = rate_noninteger(smooth);
    CHECK(res2.exponent ==
          doctest::Approx(std::min(0.5, 0.6 / derive(smooth).tau(1))).epsilon(1e-14));
}

TEST_CASE("rate_noninteger: boundary tau(p) = 1 - 1/p joins cases 1 and 3") {
    // (1 - 1/p)/tau(1) = tau(p)/tau(1) exactly at the boundary.
    // d=1, p=2.5: need tau(p) = 0.6: 1 - 1/(beta r) + 0.4/beta = 0.6.
    // beta=1, r=1.25: 1 - 0.8 + 0.4 = 0.6. Exactly on the boundary -> case 1.
    auto cp = make(1, {1}, {1.25}, 2.5, 8);
    auto res = rate_noninteger(cp);
    CHECK(res.regime == Regime::NonIntCase1);
    CHECK((2 * 0.6 - 0.6) / derive(cp).tau(1) ==
          doctest::Approx(0.6 / derive(cp).tau(1)).epsilon(1e-14));
}

TEST_CASE("rate_noninteger: q = p inconsistency and guards") {
    // beta=1, r=1, p=q=2.5: 1/omega = 1, tau(2.5) = 0.4/1 > 0: consistent zone.
    // beta=0.4, r=1: 1/omega=2.5, tau(2.5) = 1 - 2.5 + 1 = -0.5 < 0: note only.
    // Exact zero: tau(p) = 0 iff 1/omega - 1/(beta p) = 1; beta=1, r=1, p... take
    // d=1, beta=2/3, r=1: 1/beta=1.5, 1/omega=1.5, tau(2.5)=1-1.5+0.6=0.1; tune
    // beta so that 1 - 1/beta + 1/(beta*2.5) = 0  =>  1/beta * (1 - 0.4) = 1
    // =>  beta = 0.6.
    auto res = rate_noninteger(make(1, {0.6}, {1}, 2.5, 2.5));
    CHECK(res.regime == Regime::Inconsistent);
    CHECK_THROWS_AS(rate_noninteger(make(1, {1}, {1}, 3.0, 4)), std::invalid_argument);
}

TEST_CASE("rate_lp_loss") {
    // d=1, beta=1, r=1, p=2: tau(2) = 0.5, tau(1) = 1 -> 0.5.
    CHECK(rate_lp_loss(make(1, {1}, {1}, 2, 2)) == doctest::Approx(0.5).epsilon(1e-14));
    // tau(p) = 1 with integer p is excluded: beta=1, r=2, p=2 gives tau(2)=1.
    CHECK_THROWS_AS(rate_lp_loss(make(1, {1}, {2}, 2, 2)), std::invalid_argument);
    // r* > p rejected
    CHECK_THROWS_AS(rate_lp_loss(make(1, {1}, {4}, 2, 2)), std::invalid_argument);
    // positivity in the admissible zone
    CHECK(rate_lp_loss(make(1, {1}, {1}, 2, 2)) > 0);
}

TEST_CASE("classify_D_sets") {
    // D1: tau(p) > 2(1-1/p). p=2.5: threshold 1.2. beta=2, r=inf:
    // tau(2.5) = 1 + 0.2/2.5... = 1 + 1/(2*2.5) = 1.2 not >. beta=1, r=inf:
    // tau(2.5) = 1.4 > 1.2.
    auto cp = make(1, {1}, {kInf}, 2.5, kInf);
    auto cls = classify_D_sets(cp);
    CHECK(cls.set == DSet::D1);
    auto sc = derive(cp);
    CHECK(*cls.gamma1 ==
          doctest::Approx((2 * 0.6 - sc.tau(2.5)) / sc.tau(1)).epsilon(1e-14));
    CHECK(*cls.gamma2 == doctest::Approx(0 + 0.6 / sc.tau(1)).epsilon(1e-14));

    // D2: tau(p) < 1 - 2/p and tau(inf) < 0: p=2.5 -> threshold 0.2;
    // beta=0.5, r=1.25: tau(inf) = -0.6, tau(2.5) = 0.2 not <; r=1.2:
    // 1/omega = 5/3, tau(inf) = -2/3, tau(2.5) = 1 - 5/3 + 0.8 = 2/15 < 0.2.
    auto cp2 = make(1, {0.5}, {1.2}, 2.5, kInf);
    auto cls2 = classify_D_sets(cp2);
    CHECK(cls2.set == DSet::D2);
    double omega_p = (1.0 / derive(cp2).inv_omega) / 2.5;
    CHECK(*cls2.gamma1 == doctest::Approx(omega_p).epsilon(1e-14));
    CHECK(*cls2.gamma2 == doctest::Approx(omega_p).epsilon(1e-14));

    // Boundary tau(p) = 1 - 1/p sits strictly between the zones.
    auto cp3 = make(1, {1}, {1.25}, 2.5, kInf);
    CHECK(classify_D_sets(cp3).set == DSet::Neither);
}

TEST_CASE("rate_functional") {
    auto ent = rate_functional(FunctionalKind::Entropy);
    CHECK(ent.exponent == 0);
    CHECK(ent.log_exponent == doctest::Approx(-3.0));
    auto ts = rate_functional(FunctionalKind::TsallisP, 0.5);
    CHECK(ts.log_exponent == doctest::Approx(-1.0));
    CHECK_THROWS_AS(rate_functional(FunctionalKind::TsallisP, 1.0), std::invalid_argument);
}

TEST_CASE("constant exponent depends on L only through bbL") {
    // Two L vectors with the same prod L_j^{1/beta_j}.
    auto a = make(2, {1, 1}, {4, 4}, 2, 8, {2, 3});
    auto b = make(2, {1, 1}, {4, 4}, 2, 8, {6, 1});
    CHECK(derive(a).bbL == doctest::Approx(derive(b).bbL).epsilon(1e-15));
    CHECK(rate_integer(a).constant_exponent ==
          doctest::Approx(rate_integer(b).constant_exponent).epsilon(1e-15));
}
