#include "lplb/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lplb::quad {

namespace {

// QUADPACK (G7,K15) nodes and weights on [-1, 1], positive half.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkResult {
    double kronrod;
    double err;
};

GkResult gk15(const Fn1& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    return {resk * h, std::abs((resk - resg) * h)};
}

double adapt(const Fn1& f, double a, double b, double tol, int depth,
             const Options& opt, double whole_scale) {
    const GkResult r = gk15(f, a, b);
    if (depth >= opt.max_depth) return r.kronrod;
    if (r.err <= tol || r.err <= opt.rel_tol * std::abs(r.kronrod) ||
        r.err <= 1e-17 * whole_scale)
        return r.kronrod;
    const double m = 0.5 * (a + b);
    return adapt(f, a, m, 0.5 * tol, depth + 1, opt, whole_scale) +
           adapt(f, m, b, 0.5 * tol, depth + 1, opt, whole_scale);
}

}  // namespace

double integrate(const Fn1& f, double a, double b, const Options& opt) {
    if (a == b) return 0.0;
    if (!(a < b)) throw std::invalid_argument("integrate: requires a <= b");
    const GkResult first = gk15(f, a, b);
    const double scale = std::max(std::abs(first.kronrod), 1.0);
    return adapt(f, a, b, opt.abs_tol, 0, opt, scale);
}

double integrate_cells(const Fn1& f, double a, double b,
                       const std::vector<double>& breaks, const Options& opt) {
    std::vector<double> pts;
    pts.push_back(a);
    for (double x : breaks)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    double total = 0;
    Options cell_opt = opt;
    cell_opt.abs_tol = opt.abs_tol / std::max<size_t>(1, pts.size() - 1);
    for (size_t i = 0; i + 1 < pts.size(); ++i)
        total += integrate(f, pts[i], pts[i + 1], cell_opt);
    return total;
}

double integrate_box(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& lo, const std::vector<double>& hi,
                     const Options& opt) {
    const size_t d = lo.size();
    if (hi.size() != d || d == 0)
        throw std::invalid_argument("integrate_box: dimension mismatch");
    if (d == 1)
        return integrate([&](double x) { return f({x}); }, lo[0], hi[0], opt);

    std::vector<double> ilo(lo.begin(), lo.end() - 1), ihi(hi.begin(), hi.end() - 1);
    Options inner = opt;
    inner.abs_tol = opt.abs_tol * 0.1 / std::max(1.0, hi.back() - lo.back());
    return integrate(
        [&](double xd) {
            return integrate_box(
                [&](const std::vector<double>& y) {
                    std::vector<double> z(y);
                    z.push_back(xd);
                    return f(z);
                },
                ilo, ihi, inner);
        },
        lo.back(), hi.back(), opt);
}

}  // namespace lplb::quad
