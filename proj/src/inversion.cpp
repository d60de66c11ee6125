#include "inversion.hpp"

#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

// Both integrals are evaluated along a ray t = r e^{-i theta} in the
// complex plane instead of the positive real axis. The integrand
// e^{-itz} phi(t) is analytic in the sector swept by the rotation and
// decays on the closing arc, so the value is unchanged, but along the ray
// the factor e^{-itz} decays exponentially instead of oscillating. That
// keeps the cost flat in |z| and preserves relative accuracy far in the
// tails. Where no useful rotation exists (alpha = 1 with beta != 0, or a
// shift that sits near the origin) theta is 0 and the integral is split
// into panels of a few oscillations each.

namespace mvstable::detail {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kDecay = 45.0;  // truncate where |integrand| < e^-45
constexpr int kMaxPanels = 100000;
constexpr double kAbsTol = 1e-14;
constexpr double kRelTol = 1e-12;

cplx expm1c(cplx w) {
    const double x = w.real();
    const double y = w.imag();
    const double s = std::sin(0.5 * y);
    return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

/// log of e^{-itz} phi_std(t), evaluated on a ray through the origin.
class Exponent {
public:
    Exponent(double alpha, double beta, double z) : alpha_(alpha), beta_(beta), z_(z) {
        unit_ = alpha == 1.0;
        if (unit_) {
            shift_ = z;
            c_ = 1.0;
        } else {
            k_ = std::tan(0.5 * kPi * alpha);
            shift_ = z + beta * k_;
            c_ = cplx(1.0, -beta * k_);
        }
        choose_rotation();
    }

    [[nodiscard]] double theta() const { return theta_; }
    [[nodiscard]] double reach() const { return reach_; }
    [[nodiscard]] cplx direction() const { return dir_; }
    [[nodiscard]] double shift() const { return shift_; }

    /// E(r e^{-i theta}).
    [[nodiscard]] cplx at(double r) const {
        const cplx t = r * dir_;
        if (unit_) {
            const cplx logt(std::log(r), -theta_);
            return cplx(0.0, -z_) * t - t - cplx(0.0, 2.0 * beta_ / kPi) * t * logt;
        }
        if (!near_unit_) {
            // -i (z + beta k) t - (1 - i beta k) t^alpha
            return cplx(0.0, -shift_) * t - c_rot_ * std::pow(r, alpha_);
        }
        // Near alpha = 1 both beta k terms are huge and nearly cancel, so the
        // bracket beta k (t - t^alpha) is formed through expm1 instead.
        const cplx logt(std::log(r), -theta_);
        const cplx w = (alpha_ - 1.0) * logt;
        const cplx ta = t * std::exp(w);
        return cplx(0.0, -z_) * t - ta + cplx(0.0, beta_ * k_) * t * expm1c(w);
    }

    /// Radial derivative dE/dr, used only to size the panels.
    [[nodiscard]] double radial_frequency(double r) const {
        const cplx logt(std::log(r), -theta_);
        cplx d;
        if (unit_) {
            d = cplx(0.0, -z_) - 1.0 - cplx(0.0, 2.0 * beta_ / kPi) * (logt + 1.0);
        } else {
            d = cplx(0.0, -shift_) - c_ * alpha_ * std::exp((alpha_ - 1.0) * logt);
        }
        return std::abs((dir_ * d).imag());
    }

private:
    void choose_rotation() {
        const double a = std::arg(c_);
        if (unit_ && beta_ != 0.0) {
            theta_ = 0.0;
        } else if (shift_ > 0.0) {
            theta_ = std::min(0.25 * kPi, 0.5 * (a + 0.5 * kPi) / alpha_);
        } else if (shift_ < 0.0) {
            theta_ = std::max(-0.25 * kPi, 0.5 * (a - 0.5 * kPi) / alpha_);
        } else {
            theta_ = 0.0;
        }
        dir_ = std::polar(1.0, -theta_);
        c_rot_ = c_ * std::polar(1.0, -alpha_ * theta_);
        near_unit_ = !unit_ && std::abs(alpha_ - 1.0) < 0.1;

        double reach = std::numeric_limits<double>::infinity();
        const double lin = shift_ * std::sin(theta_);
        if (lin > 0.0) reach = kDecay / lin;
        if (unit_ && beta_ != 0.0) {
            reach = std::min(reach, kDecay);
        } else {
            const double pw = std::abs(c_) * std::cos(a - alpha_ * theta_);
            if (pw > 0.0) reach = std::min(reach, std::pow(kDecay / pw, 1.0 / alpha_));
        }
        reach_ = std::min(reach, 1e8);
    }

    double alpha_;
    double beta_;
    double z_;
    bool unit_ = false;
    double k_ = 0.0;
    double shift_ = 0.0;
    cplx c_;
    double theta_ = 0.0;
    cplx dir_;
    cplx c_rot_;  // c e^{-i alpha theta}
    bool near_unit_ = false;
    double reach_ = 0.0;
};

/// Initial partition of [0, reach]: roughly one piece per oscillation of
/// the integrand over the stretch where it is not yet negligible.
std::vector<double> initial_breaks(const Exponent& e, double reach, double extra_frequency) {
    constexpr int kSamples = 24;
    double omega = extra_frequency;
    for (int i = 1; i <= kSamples; ++i) {
        const double r = e.reach() * i / kSamples;
        if (e.at(r).real() < -35.0) break;
        omega = std::max(omega, e.radial_frequency(r));
    }
    const double count = std::ceil(reach * omega / (2.0 * kPi));
    const auto pieces = static_cast<std::size_t>(std::clamp(count, 1.0, static_cast<double>(kMaxPanels)));
    std::vector<double> breaks(pieces + 1);
    for (std::size_t i = 0; i <= pieces; ++i) breaks[i] = reach * static_cast<double>(i) / static_cast<double>(pieces);
    return breaks;
}

/// Adaptive integration with the first piece remapped by r = w (u/w)^4.
/// Terms in r^alpha are not smooth at the origin; the power map makes
/// them several times differentiable so the rule converges without deep
/// bisection toward 0.
template <class F>
double integrate_graded(F&& f, const std::vector<double>& breaks) {
    const double w = breaks[1];
    auto mapped = [&](double u) -> double {
        if (u >= w) return f(u);
        const double s = u / w;
        const double s3 = s * s * s;
        return f(w * s3 * s) * 4.0 * s3;
    };
    return adaptive_kronrod(mapped, breaks, kAbsTol, kRelTol);
}

}  // namespace

double standard_pdf(double alpha, double beta, double z) {
    if (std::isnan(z)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(z)) return 0.0;
    const Exponent e(alpha, beta, z);
    const cplx dir = e.direction();
    auto integrand = [&](double r) -> double {
        if (r <= 0.0) return dir.real();
        return (dir * std::exp(e.at(r))).real();
    };
    const double value = integrate_graded(integrand, initial_breaks(e, e.reach(), 0.0)) / kPi;
    return std::max(value, 0.0);
}

double standard_cdf(double alpha, double beta, double z) {
    if (std::isnan(z)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(z)) return z > 0 ? 1.0 : 0.0;
    const Exponent e(alpha, beta, z);
    double im_integral = 0.0;
    if (e.theta() == 0.0) {
        // Gil-Pelaez on the real axis: 1/2 - (1/pi) int Im[e^{-itz} phi(t)] / t dt.
        auto integrand = [&](double r) -> double {
            if (r <= 0.0) return 0.0;
            return expm1c(e.at(r)).imag() / r;
        };
        im_integral = integrate_graded(integrand, initial_breaks(e, e.reach(), 0.0));
    } else {
        // Subtract a real-on-the-axis kernel exp(-s t) so the 1/t pole cancels
        // before rotating; its imaginary part contributes nothing on the axis.
        const cplx dir = e.direction();
        const double s = std::max(1.0, std::abs(e.shift()));
        const double reach = std::max(e.reach(), kDecay / (s * std::cos(e.theta())));
        auto integrand = [&](double r) -> double {
            if (r <= 0.0) return 0.0;
            const cplx h = -s * r * dir;
            const cplx E = e.at(r);
            const cplx w = E - h;
            // The factored form keeps precision near r = 0 where E and h
            // nearly cancel; further out it could overflow, so fall back
            // to the plain difference.
            if (std::abs(w) < 1.0) return (std::exp(h) * expm1c(w)).imag() / r;
            return (std::exp(E) - std::exp(h)).imag() / r;
        };
        im_integral = integrate_graded(integrand, initial_breaks(e, reach, s * std::abs(std::sin(e.theta()))));
    }
    return std::clamp(0.5 - im_integral / kPi, 0.0, 1.0);
}

}  // namespace mvstable::detail
