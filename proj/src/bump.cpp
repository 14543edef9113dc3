#include "lplb/bump.hpp"

#include <cmath>
#include <stdexcept>

#include "lplb/quadrature.hpp"

namespace lplb::family {

namespace {

double raw(double u) {
    double w = 1.0 - u * u;
    return w <= 0 ? 0.0 : std::exp(-1.0 / w);
}

constexpr int kCdfNodes = 16385;  // uniform grid on [-1, 1]

}  // namespace

const Bump1D& Bump1D::instance() {
    static const Bump1D inst;
    return inst;
}

Bump1D::Bump1D() {
    const double mass = quad::integrate(raw, -1.0, 1.0, {1e-15, 1e-15, 60});
    norm_ = 1.0 / mass;
    peak_ = norm_ * std::exp(-1.0);
    log_integral_ = quad::integrate(
        [this](double u) {
            double v = value(u);
            return v <= 0 ? 0.0 : v * std::log(v);
        },
        -1.0, 1.0, {1e-13, 1e-13, 60});

    // cumulative table, each cell integrated adaptively
    cdf_.resize(kCdfNodes);
    cdf_[0] = 0.0;
    const double h = 2.0 / (kCdfNodes - 1);
    for (int i = 1; i < kCdfNodes; ++i) {
        double a = -1.0 + (i - 1) * h, b = -1.0 + i * h;
        cdf_[i] = cdf_[i - 1] +
                  quad::integrate([this](double u) { return value(u); }, a, b,
                                  {1e-15, 1e-12, 30});
    }
    // renormalize the tiny accumulation drift so cdf(1) = 1 exactly
    double total = cdf_.back();
    for (double& v : cdf_) v /= total;

    cdf_log_integral_ = quad::integrate(
        [this](double u) {
            double p = cdf(u);
            return p <= 0 ? 0.0 : p * std::log(p);
        },
        -1.0, 1.0, {1e-12, 1e-12, 60});
}

double Bump1D::value(double u) const { return norm_ * raw(u); }

double Bump1D::pow_integral(double z) const {
    if (!(z > 0)) throw std::invalid_argument("Bump1D::pow_integral: z must be > 0");
    return quad::integrate([this, z](double u) { return std::pow(value(u), z); },
                           -1.0, 1.0, {1e-14, 1e-13, 60});
}

double Bump1D::cdf(double u) const {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double h = 2.0 / (kCdfNodes - 1);
    double pos = (u + 1.0) / h;
    int i = static_cast<int>(pos);
    if (i >= kCdfNodes - 1) i = kCdfNodes - 2;
    double x0 = -1.0 + i * h;
    double t = (u - x0) / h;
    // cubic Hermite with exact slopes (the density itself)
    double p0 = cdf_[i], p1 = cdf_[i + 1];
    double m0 = value(x0) * h, m1 = value(x0 + h) * h;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 +
           (-2 * t3 + 3 * t2) * p1 + (t3 - t2) * m1;
}

double Bump1D::cdf_pow_integral(double p) const {
    return quad::integrate([this, p](double u) { return std::pow(cdf(u), p); },
                           -1.0, 1.0, {1e-13, 1e-13, 60});
}

double Bump1D::sample(std::mt19937_64& gen) const {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (long it = 0; it < 100000000L; ++it) {
        double x = 2.0 * u01(gen) - 1.0;
        if (u01(gen) * peak_ <= value(x)) return x;
    }
    throw std::runtime_error("Bump1D::sample: rejection cap exceeded");
}

double BumpProfile::value(const double* x) const {
    const Bump1D& b = Bump1D::instance();
    double acc = 1.0;
    for (int l = 0; l < d; ++l) {
        acc *= b.value(x[l]);
        if (acc == 0.0) return 0.0;
    }
    return acc;
}

double BumpProfile::norm(double z) const {
    const Bump1D& b = Bump1D::instance();
    if (std::isinf(z)) return std::pow(b.max_value(), d);
    return std::pow(b.pow_integral(z), d / z);
}

double BumpProfile::norm_pow(double z) const {
    return std::pow(Bump1D::instance().pow_integral(z), d);
}

double BumpProfile::log_integral() const {
    return d * Bump1D::instance().log_integral();
}

void BumpProfile::sample(std::mt19937_64& gen, double* out) const {
    const Bump1D& b = Bump1D::instance();
    for (int l = 0; l < d; ++l) out[l] = b.sample(gen);
}

}  // namespace lplb::family
