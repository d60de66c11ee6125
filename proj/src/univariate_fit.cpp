#include "mvstable/univariate.hpp"

#include "density_table.hpp"
#include "inversion.hpp"
#include "mcculloch.hpp"
#include "mvstable/error.hpp"
#include "mvstable/sample_stats.hpp"
#include "mvstable/warnings.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace mvstable {
namespace {

constexpr double kAlphaMin = 0.6;
constexpr double kAlphaMax = 2.0;

// Below this many points the likelihood calls the inversion directly; above
// it the standardized log-density is tabulated once per trial alpha.
constexpr std::size_t kDirectLikelihoodMax = 200;

struct QuantileSummary {
    double q05, q25, q50, q75, q95;
    double nu_alpha;  // (q95 - q05) / (q75 - q25)
    double nu_beta;   // (q95 + q05 - 2 q50) / (q95 - q05)
};

QuantileSummary summarize(std::span<const double> sample) {
    if (sample.empty()) throw EstimationError("cannot fit an empty sample");
    for (double v : sample)
        if (!std::isfinite(v)) throw EstimationError("sample contains non-finite values");
    if (sample.size() < 100)
        warn("quantile fit on " + std::to_string(sample.size()) + " points; estimates below 100 points are unreliable");
    const auto s = sorted_copy(sample);
    QuantileSummary q{};
    q.q05 = sorted_quantile(s, 0.05);
    q.q25 = sorted_quantile(s, 0.25);
    q.q50 = sorted_quantile(s, 0.50);
    q.q75 = sorted_quantile(s, 0.75);
    q.q95 = sorted_quantile(s, 0.95);
    const double iqr = q.q75 - q.q25;
    if (!(iqr > 0.0)) throw EstimationError("degenerate sample: interquartile range is zero");
    q.nu_alpha = (q.q95 - q.q05) / iqr;
    q.nu_beta = (q.q95 + q.q05 - 2.0 * q.q50) / (q.q95 - q.q05);
    return q;
}

/// Scale and location from the tables once alpha and beta are known.
UnivariateStableParams complete(const QuantileSummary& q, double alpha, double beta) {
    UnivariateStableParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.gamma = (q.q75 - q.q25) / detail::table_scale(alpha, beta);
    const double zeta = q.q50 + p.gamma * detail::table_location(alpha, beta);
    // zeta is the S0 location except at alpha = 1, where it is the S1 one.
    p.delta = alpha == 1.0 ? zeta + (2.0 / std::numbers::pi) * beta * p.gamma * std::log(p.gamma) : zeta;
    return p;
}

double signed_beta(const QuantileSummary& q, double nu_alpha) {
    const double b = detail::table_beta(nu_alpha, std::abs(q.nu_beta));
    return std::clamp(std::copysign(b, q.nu_beta), -1.0, 1.0);
}

double nu_alpha_clamped(double nu) { return std::clamp(nu, detail::kNuAlphaMin, detail::kNuAlphaMax); }

double log_likelihood(std::span<const double> sample, double alpha, const UnivariateStableParams& fixed) {
    const double log_gamma = std::log(fixed.gamma);
    auto direct = [&](double z) { return detail::log_density_floor(detail::standard_pdf(alpha, fixed.beta, z)); };
    std::vector<double> z(sample.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = (sample[i] - fixed.delta) / fixed.gamma;
    double total = 0.0;
    if (z.size() <= kDirectLikelihoodMax) {
        for (double v : z) total += direct(v);
    } else {
        // Tabulate the bulk; the sparse extremes, where the spline is least
        // reliable, are evaluated directly.
        auto sorted = z;
        const std::size_t cut = sorted.size() / 100;
        std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(cut), sorted.end());
        const double lo = sorted[cut];
        std::nth_element(sorted.begin(), sorted.end() - 1 - static_cast<std::ptrdiff_t>(cut), sorted.end());
        const double hi = sorted[sorted.size() - 1 - cut];
        const detail::StandardTable table(detail::StandardTable::Kind::log_pdf, alpha, fixed.beta, lo, hi);
        for (double v : z) total += (v < lo || v > hi) ? direct(v) : table(v);
    }
    return total - static_cast<double>(z.size()) * log_gamma;
}

}  // namespace

UnivariateStableParams fit_quantile(std::span<const double> sample) {
    const QuantileSummary q = summarize(sample);
    const double nu_a = nu_alpha_clamped(q.nu_alpha);
    const double alpha = std::clamp(detail::table_alpha(nu_a, std::abs(q.nu_beta)), kAlphaMin, kAlphaMax);
    return complete(q, alpha, signed_beta(q, nu_a));
}

UnivariateStableParams fit_quantile_given_alpha(std::span<const double> sample, double alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("alpha must lie in (0, 2]");
    const QuantileSummary q = summarize(sample);
    const double anb = std::abs(q.nu_beta);
    // The tabulated alpha decreases in nu_alpha at fixed nu_beta; invert it
    // by bisection to find the nu_alpha consistent with the given alpha.
    double lo = detail::kNuAlphaMin;
    double hi = detail::kNuAlphaMax;
    double nu;
    if (alpha >= detail::table_alpha(lo, anb)) {
        nu = lo;
    } else if (alpha <= detail::table_alpha(hi, anb)) {
        nu = hi;
    } else {
        for (int i = 0; i < 60; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (detail::table_alpha(mid, anb) > alpha) lo = mid;
            else hi = mid;
        }
        nu = 0.5 * (lo + hi);
    }
    return complete(q, alpha, signed_beta(q, nu));
}

UnivariateStableParams fit_ml_alpha(std::span<const double> sample, const UnivariateStableParams& init) {
    init.validate();
    if (sample.empty()) throw EstimationError("cannot fit an empty sample");
    auto objective = [&](double alpha) {
        const double ll = log_likelihood(sample, alpha, init);
        if (!std::isfinite(ll))
            throw EstimationError("log-likelihood is not finite at alpha = " + std::to_string(alpha));
        return -ll;
    };
    std::uintmax_t iterations = 100;
    const auto [alpha, neg_ll] = boost::math::tools::brent_find_minima(objective, kAlphaMin, kAlphaMax, 20, iterations);
    // Brent never samples the end points; accept alpha = 2 exactly when the
    // normal law is at least as likely as the interior optimum.
    double best = alpha;
    if (kAlphaMax - alpha < 1e-3 && objective(kAlphaMax) <= neg_ll) best = kAlphaMax;
    return fit_quantile_given_alpha(sample, best);
}

UnivariateStableParams fit_univariate(std::span<const double> sample) {
    return fit_ml_alpha(sample, fit_quantile(sample));
}

}  // namespace mvstable
