#include "lplb/family.hpp"

#include <cmath>
#include <stdexcept>

#include "lplb/quadrature.hpp"

namespace lplb::family {

namespace {

const Bump1D& bump() { return Bump1D::instance(); }

}  // namespace

BaseDensity::BaseDensity(int d, double N, double a) : d_(d), N_(N), a_(a) {
    if (d < 1 || !(N >= 4) || !(a > 0))
        throw std::invalid_argument("BaseDensity: need d >= 1, N >= 4, a > 0");
}

double BaseDensity::eval1(double v) const {
    double t = a_ * v;
    if (t >= 0.0 || t <= -(N_ + 2.0)) return 0.0;
    double g;
    if (t >= -2.0) {
        g = bump().cdf(-1.0 - t) / N_;          // right shoulder
    } else if (t <= -N_) {
        g = (1.0 - bump().cdf(-N_ - 1.0 - t)) / N_;  // left shoulder
    } else {
        g = 1.0 / N_;                            // flat interior
    }
    return a_ * g;
}

double BaseDensity::eval(const double* x) const {
    double acc = 1.0;
    for (int l = 0; l < d_; ++l) {
        acc *= eval1(x[l]);
        if (acc == 0.0) return 0.0;
    }
    return acc;
}

void BaseDensity::sample(std::mt19937_64& gen, double* out) const {
    std::uniform_real_distribution<double> box(-N_ - 1.0, -1.0);
    for (int l = 0; l < d_; ++l)
        out[l] = (bump().sample(gen) + box(gen)) / a_;
}

double BaseDensity::lp_pow(double p) const {
    // int g^p = N^{-p} (N - 2 + 2 J_p), J_p = int_{-1}^1 Phi^p
    double jp = bump().cdf_pow_integral(p);
    double per_coord = std::pow(N_, -p) * (N_ - 2.0 + 2.0 * jp);
    return std::pow(a_, d_ * (p - 1.0)) * std::pow(per_coord, d_);
}

double BaseDensity::norm(double q) const {
    if (std::isinf(q)) return std::pow(a_ / N_, d_);
    return std::pow(lp_pow(q), 1.0 / q);
}

double BaseDensity::log_integral() const {
    // per coordinate: ln a - ln N + (2/N) int Phi ln Phi
    double per = std::log(a_) - std::log(N_) + 2.0 / N_ * bump().cdf_log_integral();
    return d_ * per;
}

BaseDensity build_base(int d, double q, double Q, double a) {
    if (!(Q > 0)) throw std::invalid_argument("build_base: Q must be > 0");
    double lo = 4.0, hi = 4.0;
    auto ok = [&](double N) { return BaseDensity(d, N, a).norm(q) <= 0.5 * Q; };
    if (ok(lo)) return BaseDensity(d, lo, a);
    while (!ok(hi)) {
        hi *= 2.0;
        if (hi > 1e280) throw std::runtime_error("build_base: cannot satisfy ||f0||_q <= Q/2");
    }
    for (int i = 0; i < 200; ++i) {
        double mid = std::sqrt(lo * hi);
        (ok(mid) ? hi : lo) = mid;
    }
    return BaseDensity(d, hi, a);
}

double calibrate_base_N(int d, double a, double p, double target, double n_min) {
    if (!(target > 0)) throw std::invalid_argument("calibrate_base_N: target must be > 0");
    auto lp = [&](double N) { return BaseDensity(d, N, a).lp_pow(p); };
    double lo = 4.0;
    if (lp(lo) <= target) return std::max(lo, n_min);
    double hi = 8.0;
    while (lp(hi) > target) {
        hi *= 2.0;
        if (hi > 1e280) throw std::runtime_error("calibrate_base_N: target unreachable");
    }
    for (int i = 0; i < 200; ++i) {
        double mid = std::sqrt(lo * hi);
        (lp(mid) > target ? lo : hi) = mid;
    }
    return std::max(hi, n_min);
}

Functional Functional::parse(const std::string& spec) {
    auto idx = spec.find(':');
    std::string head = spec.substr(0, idx);
    double par = idx == std::string::npos ? 0.0 : std::stod(spec.substr(idx + 1));
    if (head == "lpnorm") return lp_norm(par);
    if (head == "power") return integral_power(par);
    if (head == "entropy") return entropy();
    if (head == "tsallis") return tsallis(par);
    if (head == "renyi") return renyi(par);
    throw std::invalid_argument("Functional::parse: unknown spec " + spec);
}

std::string Functional::name() const {
    switch (kind) {
        case Kind::LpNorm: return "lpnorm:" + std::to_string(p);
        case Kind::IntegralPower: return "power:" + std::to_string(p);
        case Kind::Entropy: return "entropy";
        case Kind::Tsallis: return "tsallis:" + std::to_string(p);
        case Kind::Renyi: return "renyi:" + std::to_string(p);
    }
    return "?";
}

double Functional::G(double y) const {
    switch (kind) {
        case Kind::LpNorm: return y <= 0 ? 0.0 : std::pow(y, 1.0 / p);
        case Kind::IntegralPower: return y;
        case Kind::Entropy: return y;
        case Kind::Tsallis: return y / (p - 1.0);
        case Kind::Renyi: return y <= 0 ? -std::numeric_limits<double>::infinity()
                                        : std::log(y) / (1.0 - p);
    }
    return 0;
}

double Functional::H(double y) const {
    switch (kind) {
        case Kind::LpNorm:
        case Kind::IntegralPower:
        case Kind::Renyi: return std::pow(y, p);
        case Kind::Entropy: return y <= 0 ? 0.0 : -y * std::log(y);
        case Kind::Tsallis: return y - std::pow(y, p);
    }
    return 0;
}

double Functional::S(double z, const BumpProfile& prof) const {
    switch (kind) {
        case Kind::LpNorm:
        case Kind::IntegralPower:
        case Kind::Renyi: return std::pow(z, p) * prof.norm_pow(p);
        case Kind::Entropy:
            return z <= 0 ? 0.0 : -z * std::log(z) - z * prof.log_integral();
        case Kind::Tsallis: return z - std::pow(z, p) * prof.norm_pow(p);
    }
    return 0;
}

double Functional::S0(double z, const BaseDensity& base) const {
    double u = 1.0 - z;
    switch (kind) {
        case Kind::LpNorm:
        case Kind::IntegralPower:
        case Kind::Renyi: return std::pow(u, p) * base.lp_pow(p);
        case Kind::Entropy:
            return u <= 0 ? 0.0 : -u * std::log(u) - u * base.log_integral();
        case Kind::Tsallis: return u - std::pow(u, p) * base.lp_pow(p);
    }
    return 0;
}

double Functional::eta_S0(double x0, double delta, const BaseDensity& base) const {
    switch (kind) {
        case Kind::LpNorm:
        case Kind::IntegralPower:
        case Kind::Renyi:
            // Lipschitz bound p ||f0||_p^p delta on [0,1]
            return p * base.lp_pow(p) * delta;
        default: {
            // dense sampling of |S0(x0) - S0(y)| over |y - x0| <= delta
            double s0 = S0(x0, base), best = 0;
            for (int i = 0; i <= 256; ++i) {
                double y = x0 - delta + 2.0 * delta * i / 256.0;
                y = std::min(1.0, std::max(0.0, y));
                best = std::max(best, std::abs(S0(y, base) - s0));
            }
            return best;
        }
    }
}

DensityFamily::DensityFamily(int d, long M, double A, std::vector<double> sigma,
                             BaseDensity base, double e1)
    : d_(d), M_(M), A_(A), sigma_(std::move(sigma)), base_(std::move(base)),
      profile_{d}, e1_(e1) {
    if (M < 1) throw std::invalid_argument("DensityFamily: M must be >= 1");
    if (static_cast<int>(sigma_.size()) != d)
        throw std::invalid_argument("DensityFamily: sigma must have length d");
    m_vol_ = 1.0;
    for (double s : sigma_) {
        if (!(s > 0 && s <= 1))
            throw std::invalid_argument("DensityFamily: sigma_l must be in (0,1]");
        m_vol_ *= s;
    }
    if (!(A > 0)) throw std::invalid_argument("DensityFamily: A must be > 0");
    if (base_.dim() != d) throw std::invalid_argument("DensityFamily: base dim mismatch");
    grid_side_ = static_cast<long>(std::ceil(std::pow(static_cast<double>(M), 1.0 / d)));
    if (!(e1 >= 0 && e1 <= 1)) throw std::invalid_argument("DensityFamily: e1 in [0,1]");
}

double DensityFamily::D() const {
    double denom = 1.0 - A_ * m_vol_ * static_cast<double>(M_) * e1_;
    if (!(denom > 0)) throw std::runtime_error("DensityFamily::D: A m M e1 >= 1");
    return A_ * m_vol_ / denom;
}

void DensityFamily::center(long m, double* out) const {
    // row-major multi-index over {0..side-1}^d, center 2*(index+1)
    long rem = m;
    for (int l = d_ - 1; l >= 0; --l) {
        long idx = rem % grid_side_;
        rem /= grid_side_;
        out[l] = 2.0 * static_cast<double>(idx + 1);
    }
}

long DensityFamily::bump_index(const double* x) const {
    long idx = 0;
    for (int l = 0; l < d_; ++l) {
        double j = std::round(0.5 * x[l]);
        if (j < 1 || j > static_cast<double>(grid_side_)) return -1;
        if (std::abs(x[l] - 2.0 * j) > sigma_[l]) return -1;
        idx = idx * grid_side_ + (static_cast<long>(j) - 1);
    }
    return idx < M_ ? idx : -1;
}

double DensityFamily::rho1(const std::vector<double>& w) const {
    double acc = 0;
    for (double v : w) acc += v;
    return acc;
}

double DensityFamily::eval(const std::vector<double>& w, const double* x) const {
    if (static_cast<long>(w.size()) != M_)
        throw std::invalid_argument("DensityFamily::eval: w must have length M");
    for (double v : w)
        if (v < 0 || v > 1)
            throw std::invalid_argument("DensityFamily::eval: w outside [0,1]^M");
    double val = (1.0 - A_ * m_vol_ * rho1(w)) * base_.eval(x);
    long m = bump_index(x);
    if (m >= 0 && w[m] != 0) {
        std::vector<double> u(d_);
        double c[16];
        center(m, c);
        for (int l = 0; l < d_; ++l) u[l] = (x[l] - c[l]) / sigma_[l];
        double lam = profile_.value(u.data());
        if (lam > 0) {
            double scale = 1.0;
            for (int l = 0; l < d_; ++l) scale /= sigma_[l];
            val += A_ * w[m] * lam * scale;
        }
    }
    return val;
}

std::vector<double> DensityFamily::sample(const std::vector<double>& w, long n,
                                          std::mt19937_64& gen) const {
    if (static_cast<long>(w.size()) != M_)
        throw std::invalid_argument("DensityFamily::sample: w must have length M");
    double bump_mass = A_ * m_vol_ * rho1(w);
    if (bump_mass > 1.0 + 1e-12)
        throw std::invalid_argument("DensityFamily::sample: f_w is not a density");
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_int_distribution<long> pick(0, M_ - 1);
    std::vector<double> out(static_cast<size_t>(n) * d_);
    std::vector<double> c(d_);
    for (long i = 0; i < n; ++i) {
        double* row = out.data() + static_cast<size_t>(i) * d_;
        if (u01(gen) >= bump_mass) {
            base_.sample(gen, row);
            continue;
        }
        long m = -1;
        for (long it = 0; it < 100000000L; ++it) {
            long cand = pick(gen);
            if (w[cand] > 0 && u01(gen) <= w[cand]) {
                m = cand;
                break;
            }
        }
        if (m < 0) throw std::runtime_error("DensityFamily::sample: selection cap");
        center(m, c.data());
        for (int l = 0; l < d_; ++l)
            row[l] = c[l] + sigma_[l] * Bump1D::instance().sample(gen);
    }
    return out;
}

double functional_value(const DensityFamily& fam, const std::vector<double>& w,
                        const Functional& F) {
    double z = fam.amplitude() * fam.m_vol() * fam.rho1(w);
    double acc = F.S0(z, fam.base());
    double bump_sum = 0;
    for (double v : w) bump_sum += F.S(fam.amplitude() * v, fam.profile());
    acc += fam.m_vol() * bump_sum;
    return F.G(acc);
}

}  // namespace lplb::family
