#pragma once

#include "mvstable/data.hpp"
#include "mvstable/spectral.hpp"
#include "mvstable/univariate.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace mvstable {

// Losses are negated returns; VaR is the positive loss quantile in the units
// of the returns (percent logreturns).

enum class VarMethod { empirical, gpd, stable };

[[nodiscard]] std::string_view to_string(VarMethod m);

struct VarEstimate {
    VarMethod method = VarMethod::empirical;
    double q = 0.0;
    double value = 0.0;
};

/// Generalized Pareto model of the exceedances over the threshold u.
struct GpdParams {
    double xi = 0.0;
    double sigma = 1.0;
    double u = 0.0;
    double zeta_u = 0.0;  ///< share of the losses above u
};

[[nodiscard]] std::vector<double> losses_from_returns(std::span<const double> returns);

/// Type-7 sample quantile of the losses; q = 1 gives the sample maximum.
[[nodiscard]] VarEstimate var_empirical(std::span<const double> losses, double q);

/// Threshold at the empirical threshold_q-quantile, (xi, sigma) by maximum
/// likelihood on the exceedances with xi restricted to (-1, inf). Needs at
/// least 20 exceedances that are not all equal.
[[nodiscard]] GpdParams fit_gpd(std::span<const double> losses, double threshold_q = 0.97);

/// u + (sigma/xi) [((1-q)/zeta_u)^(-xi) - 1]; requires q > 1 - zeta_u.
[[nodiscard]] VarEstimate var_gpd(const GpdParams& g, double q);

/// Loss quantile of a law fitted to returns: -quantile(p, 1 - q).
[[nodiscard]] VarEstimate var_stable(const UnivariateStableParams& p, double q);

struct ConditionalProbability {
    double estimate = 0.0;
    double std_error = 0.0;            ///< binomial; 0 when computed by quadrature
    std::size_t conditioning_count = 0;  ///< draws in the conditioning event (0 for quadrature)
};

/// Monte Carlo P(X_target < a_target | X_c < a_c for all c in cond) from
/// n_mc >= 1e5 draws of the measure. Coordinates are 0-based.
[[nodiscard]] ConditionalProbability cond_tail_prob(const DiscreteSpectralMeasure& m, std::span<const double> thresholds,
                                                    std::span<const std::size_t> cond, std::size_t target,
                                                    std::size_t n_mc, std::uint64_t seed);

/// Same probability under a Gaussian with the sample mean and covariance of
/// the data. A single conditioning coordinate is handled by quadrature of
/// the bivariate normal distribution function; larger sets by 1e6 draws.
[[nodiscard]] ConditionalProbability cond_tail_prob_normal(const ReturnMatrix& data, std::span<const double> thresholds,
                                                           std::span<const std::size_t> cond, std::size_t target,
                                                           std::uint64_t seed = 0);

/// Bivariate normal distribution function P(X < h, Y < k) at correlation rho.
[[nodiscard]] double bivariate_normal_cdf(double h, double k, double rho);

/// Empirical tail dependence of columns (l, k) at tail share tau = min(q, 1 - q):
/// theta_l = P(Y in lower tau tail | X in lower tau tail), theta_u likewise
/// for the upper tails. Tails are taken on ranks (ties broken by row order).
struct TailDependence {
    double q = 0.0;
    double theta_l = 0.0;
    double theta_u = 0.0;
    std::size_t tail_count = 0;  ///< points in each conditioning tail
    bool sparse = false;         ///< fewer than 20 tail points
};

[[nodiscard]] TailDependence tail_dependence(const ReturnMatrix& data, double q, std::size_t l = 0, std::size_t k = 1);

/// The same on n_mc draws of the measure.
[[nodiscard]] TailDependence tail_dependence(const DiscreteSpectralMeasure& m, double q, std::size_t n_mc,
                                             std::uint64_t seed, std::size_t l = 0, std::size_t k = 1);

/// quantile(returns, q) / |quantile(returns, 1 - q)| for q > 0.5.
[[nodiscard]] double gain_loss_ratio(std::span<const double> returns, double q);

}  // namespace mvstable
