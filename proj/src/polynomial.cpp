#include "lplb/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace lplb::poly {

namespace {

int sign_of(const Rat& x) { return sgn(x); }

// Divide out the content to keep Sturm-chain coefficients small.
void make_primitive(RatPoly& p) {
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const Rat& c : p.coef) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    if (num_gcd == 0) return;
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    for (Rat& c : p.coef) c *= scale;
}

// Remainder of a / b (degrees of a >= b assumed handled by caller).
RatPoly poly_rem(RatPoly a, const RatPoly& b) {
    int db = b.degree();
    const Rat& lead_b = b.coef[db];
    while (!a.is_zero() && a.degree() >= db) {
        int da = a.degree();
        Rat factor = a.coef[da] / lead_b;
        for (int j = 0; j <= db; ++j) a.coef[da - db + j] -= factor * b.coef[j];
        a.coef[da] = 0;
        while (!a.coef.empty() && a.coef.back() == 0) a.coef.pop_back();
    }
    return a;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rat& x) {
    int variations = 0, prev = 0;
    for (const RatPoly& p : chain) {
        int s = sign_of(p.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++variations;
        prev = s;
    }
    return variations;
}

}  // namespace

int RatPoly::degree() const {
    for (int j = static_cast<int>(coef.size()) - 1; j >= 0; --j)
        if (coef[j] != 0) return j;
    return 0;
}

bool RatPoly::is_zero() const {
    for (const Rat& c : coef)
        if (c != 0) return false;
    return true;
}

Rat RatPoly::eval(const Rat& x) const {
    Rat acc = 0;
    for (int j = static_cast<int>(coef.size()) - 1; j >= 0; --j)
        acc = acc * x + coef[j];
    return acc;
}

double RatPoly::eval_d(double x) const {
    double acc = 0;
    for (int j = static_cast<int>(coef.size()) - 1; j >= 0; --j)
        acc = acc * x + coef[j].get_d();
    return acc;
}

RatPoly RatPoly::derivative() const {
    RatPoly d;
    if (coef.size() <= 1) return d;
    d.coef.resize(coef.size() - 1);
    for (size_t j = 1; j < coef.size(); ++j)
        d.coef[j - 1] = coef[j] * static_cast<long>(j);
    return d;
}

RatPoly RatPoly::antiderivative() const {
    RatPoly a;
    a.coef.resize(coef.size() + 1);
    a.coef[0] = 0;
    for (size_t j = 0; j < coef.size(); ++j)
        a.coef[j + 1] = coef[j] / static_cast<long>(j + 1);
    return a;
}

Rat RatPoly::integral(const Rat& u, const Rat& v) const {
    RatPoly a = antiderivative();
    return a.eval(v) - a.eval(u);
}

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    RatPoly p0 = p;
    make_primitive(p0);
    chain.push_back(p0);
    if (p0.degree() == 0) return chain;
    RatPoly p1 = p0.derivative();
    make_primitive(p1);
    chain.push_back(p1);
    while (chain.back().degree() > 0 && !chain.back().is_zero()) {
        RatPoly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        for (Rat& c : r.coef) c = -c;
        make_primitive(r);
        chain.push_back(r);
    }
    return chain;
}

int count_roots(const std::vector<RatPoly>& chain, const Rat& lo, const Rat& hi) {
    return sign_variations(chain, lo) - sign_variations(chain, hi);
}

namespace {

void isolate_rec(const std::vector<RatPoly>& chain, const RatPoly& p, const Rat& lo,
                 const Rat& hi, const Rat& width_tol,
                 std::vector<std::pair<Rat, Rat>>& out, int depth) {
    if (depth > 4000)
        throw std::runtime_error("isolate_roots: bisection depth exceeded");
    int n = count_roots(chain, lo, hi);
    if (n == 0) return;
    if (n == 1 && hi - lo <= width_tol) {
        out.emplace_back(lo, hi);
        return;
    }
    Rat mid = (lo + hi) / 2;
    if (p.eval(mid) == 0) {
        out.emplace_back(mid, mid);
        // exclude an exact tiny neighborhood of the located root
        Rat eps = (hi - lo) / 1000000;
        isolate_rec(chain, p, lo, mid - eps, width_tol, out, depth + 1);
        isolate_rec(chain, p, mid + eps, hi, width_tol, out, depth + 1);
        return;
    }
    isolate_rec(chain, p, lo, mid, width_tol, out, depth + 1);
    isolate_rec(chain, p, mid, hi, width_tol, out, depth + 1);
}

}  // namespace

std::vector<std::pair<Rat, Rat>> isolate_roots(const RatPoly& p, const Rat& lo,
                                               const Rat& hi,
                                               const Rat& width_tol) {
    std::vector<std::pair<Rat, Rat>> out;
    if (p.is_zero())
        throw std::invalid_argument("isolate_roots: zero polynomial");
    auto chain = sturm_chain(p);
    // count_roots uses the half-open (lo, hi]; pick up a root at lo explicitly.
    if (p.eval(lo) == 0) out.emplace_back(lo, lo);
    isolate_rec(chain, p, lo, hi, width_tol, out, 0);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace lplb::poly
