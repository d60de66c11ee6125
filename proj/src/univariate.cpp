#include "mvstable/univariate.hpp"

#include "density_table.hpp"
#include "inversion.hpp"
#include "mvstable/error.hpp"
#include "stable_variates.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mvstable {

void UnivariateStableParams::validate() const {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("alpha must lie in (0, 2], got " + std::to_string(alpha));
    if (!(beta >= -1.0 && beta <= 1.0)) throw ParameterError("beta must lie in [-1, 1], got " + std::to_string(beta));
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma must be positive, got " + std::to_string(gamma));
    if (!std::isfinite(delta)) throw ParameterError("delta must be finite");
}

std::complex<double> charfun(const UnivariateStableParams& p, double t) {
    p.validate();
    if (t == 0.0) return {1.0, 0.0};
    const double at = std::abs(t);
    const double sgn = t > 0.0 ? 1.0 : -1.0;
    const double gt = p.gamma * at;
    std::complex<double> log_phi;
    if (p.alpha == 1.0) {
        log_phi = -gt * std::complex<double>(1.0, p.beta * (2.0 / std::numbers::pi) * sgn * std::log(gt));
    } else {
        const double ga = std::pow(gt, p.alpha);
        const double k = std::tan(0.5 * std::numbers::pi * p.alpha);
        // beta k (|gamma t| - |gamma t|^alpha) written without the cancelling product.
        log_phi = std::complex<double>(-ga, -p.beta * k * sgn * (gt - ga));
    }
    log_phi += std::complex<double>(0.0, p.delta * t);
    return std::exp(log_phi);
}

double pdf(const UnivariateStableParams& p, double x) {
    p.validate();
    return detail::standard_pdf(p.alpha, p.beta, (x - p.delta) / p.gamma) / p.gamma;
}

double cdf(const UnivariateStableParams& p, double x) {
    p.validate();
    return detail::standard_cdf(p.alpha, p.beta, (x - p.delta) / p.gamma);
}

std::vector<double> cdf_many(const UnivariateStableParams& p, std::span<const double> xs) {
    p.validate();
    constexpr std::size_t kDirectMax = 200;
    std::vector<double> z(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) z[i] = (xs[i] - p.delta) / p.gamma;
    std::vector<double> out(xs.size());
    auto direct = [&](double v) { return detail::standard_cdf(p.alpha, p.beta, v); };
    if (z.size() <= kDirectMax) {
        std::transform(z.begin(), z.end(), out.begin(), direct);
        return out;
    }
    auto sorted = z;
    const std::size_t cut = sorted.size() / 100;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(cut), sorted.end());
    const double lo = sorted[cut];
    std::nth_element(sorted.begin(), sorted.end() - 1 - static_cast<std::ptrdiff_t>(cut), sorted.end());
    const double hi = sorted[sorted.size() - 1 - cut];
    const detail::StandardTable table(detail::StandardTable::Kind::cdf, p.alpha, p.beta, lo, hi);
    for (std::size_t i = 0; i < z.size(); ++i) out[i] = (z[i] < lo || z[i] > hi) ? direct(z[i]) : table(z[i]);
    return out;
}

double quantile(const UnivariateStableParams& p, double q) {
    p.validate();
    if (!(q > 0.0 && q < 1.0)) throw ParameterError("quantile level must lie in (0, 1)");
    auto f = [&](double z) { return detail::standard_cdf(p.alpha, p.beta, z) - q; };

    double lo = -1.0;
    double hi = 1.0;
    double flo = f(lo);
    double fhi = f(hi);
    for (int i = 0; flo > 0.0 && i < 200; ++i) {
        hi = lo;
        fhi = flo;
        lo *= 2.0;
        flo = f(lo);
    }
    for (int i = 0; fhi < 0.0 && i < 200; ++i) {
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        fhi = f(hi);
    }
    if (flo > 0.0 || fhi < 0.0) throw NumericalError("quantile: could not bracket the root");
    if (flo == 0.0) return p.delta + p.gamma * lo;
    if (fhi == 0.0) return p.delta + p.gamma * hi;

    std::uintmax_t iterations = 200;
    auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-13 * std::max(1.0, std::abs(a)); };
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iterations);
    return p.delta + p.gamma * (0.5 * (a + b));
}

std::vector<double> sample_univariate(const UnivariateStableParams& p, std::size_t n, std::uint64_t seed) {
    p.validate();
    if (p.alpha == 1.0 && p.beta != 0.0)
        throw UnsupportedError("sampling alpha = 1 with beta != 0 is not supported; perturb alpha slightly");
    const detail::CmsGenerator gen(p.alpha, p.beta);
    // S1 -> S0: delta_1 = delta_0 - beta gamma tan(pi alpha / 2).
    const double shift =
        p.alpha == 1.0 ? p.delta : p.delta - p.beta * p.gamma * std::tan(0.5 * std::numbers::pi * p.alpha);
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& x : out) x = shift + p.gamma * gen(rng);
    return out;
}

}  // namespace mvstable
