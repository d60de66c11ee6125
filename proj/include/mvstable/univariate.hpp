#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace mvstable {

/// Stable law S(alpha, beta, gamma, delta) in the continuous S0
/// parametrization: (X - delta) / gamma ~ S(alpha, beta, 1, 0).
struct UnivariateStableParams {
    double alpha = 2.0;
    double beta = 0.0;
    double gamma = 1.0;
    double delta = 0.0;

    /// Throws ParameterError unless 0 < alpha <= 2, |beta| <= 1, gamma > 0
    /// and delta is finite.
    void validate() const;

    bool operator==(const UnivariateStableParams&) const = default;
};

[[nodiscard]] std::complex<double> charfun(const UnivariateStableParams& p, double t);

/// Density and distribution function by Fourier inversion of charfun.
[[nodiscard]] double pdf(const UnivariateStableParams& p, double x);
[[nodiscard]] double cdf(const UnivariateStableParams& p, double x);

/// cdf at every point of xs. Large inputs share one spline table over the
/// bulk of the points (accurate to ~1e-6); the extremes are evaluated
/// directly.
[[nodiscard]] std::vector<double> cdf_many(const UnivariateStableParams& p, std::span<const double> xs);

/// Root of cdf(p, x) = q for q in (0, 1).
[[nodiscard]] double quantile(const UnivariateStableParams& p, double q);

/// McCulloch's quantile estimator. Samples below 100 points are fitted
/// with a warning.
[[nodiscard]] UnivariateStableParams fit_quantile(std::span<const double> sample);

/// Quantile estimates of (beta, gamma, delta) with alpha held fixed.
[[nodiscard]] UnivariateStableParams fit_quantile_given_alpha(std::span<const double> sample, double alpha);

/// Maximum likelihood for alpha over [0.6, 2] with (beta, gamma, delta)
/// fixed at `init`, followed by one quantile refresh of (beta, gamma,
/// delta) at the fitted alpha.
[[nodiscard]] UnivariateStableParams fit_ml_alpha(std::span<const double> sample, const UnivariateStableParams& init);

/// fit_quantile followed by fit_ml_alpha.
[[nodiscard]] UnivariateStableParams fit_univariate(std::span<const double> sample);

/// n draws by the Chambers-Mallows-Stuck transform; alpha = 1 with
/// beta != 0 is rejected.
[[nodiscard]] std::vector<double> sample_univariate(const UnivariateStableParams& p, std::size_t n, std::uint64_t seed);

}  // namespace mvstable
