#include "lplb/sfun.hpp"

#include <cmath>
#include <stdexcept>

namespace lplb {

namespace {

// 1/(k + p + 1) with dyadic p taken exactly.
Rat inv_shift(double p, int k, int extra = 1) {
    Rat s(p);
    s += k + extra;
    return 1 / s;
}

}  // namespace

ScalarFunPtr power_fun(double p) {
    if (!(p > 0)) throw std::invalid_argument("power_fun: p must be > 0");
    auto f = std::make_shared<ScalarFun>();
    f->name = "power:" + std::to_string(p);
    f->value = [p](double x) { return std::pow(x, p); };
    f->antider = [p](double x) { return std::pow(x, p + 1) / (p + 1); };
    f->weighted_integral = [p](double z, double u, double v) {
        double e = z + p + 1;
        return (std::pow(v, e) - std::pow(u, e)) / e;
    };
    f->moment_c = [p](int k) { return inv_shift(p, k); };
    f->square_integral = [p] { return inv_shift(2 * p, 0); };
    return f;
}

ScalarFunPtr xlogx_fun() {
    auto f = std::make_shared<ScalarFun>();
    f->name = "xlogx";
    f->value = [](double x) { return x <= 0 ? 0.0 : x * std::log(x); };
    f->antider = [](double x) {
        return x <= 0 ? 0.0 : 0.5 * x * x * std::log(x) - 0.25 * x * x;
    };
    f->weighted_integral = [](double z, double u, double v) {
        // int x^{z+1} ln x dx = x^{z+2} (ln x / (z+2) - 1/(z+2)^2)
        auto prim = [z](double x) {
            if (x <= 0) return 0.0;
            double e = z + 2;
            return std::pow(x, e) * (std::log(x) / e - 1.0 / (e * e));
        };
        return prim(v) - prim(u);
    };
    f->moment_c = [](int k) -> Rat {
        Rat d(k + 2);
        return Rat(Rat(-1) / (d * d));
    };
    f->square_integral = [] {
        // int_0^1 x^2 ln^2 x dx = 2/27
        return Rat(2, 27);
    };
    return f;
}

ScalarFunPtr parse_sfun(const std::string& spec) {
    if (spec == "entropy" || spec == "xlogx") return xlogx_fun();
    const std::string prefix = "power:";
    if (spec.rfind(prefix, 0) == 0) {
        double p = std::stod(spec.substr(prefix.size()));
        return power_fun(p);
    }
    throw std::invalid_argument("unknown scalar function spec: " + spec);
}

}  // namespace lplb
