#pragma once

#include "mvstable/data.hpp"
#include "mvstable/estimator.hpp"
#include "mvstable/univariate.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mvstable {

/// Outcome of a bootstrap test. `replicates` counts the replicates that
/// produced a statistic; `failed` those dropped after an estimation error.
struct TestReport {
    double statistic = 0.0;
    double critical_value = 0.0;
    std::size_t replicates = 0;
    std::size_t failed = 0;
    double level = 0.95;
    bool reject = false;
    std::uint64_t seed = 0;
};

/// Anderson-Darling A^2 of the sample against cdf(p, .), with F clamped to
/// [1e-15, 1 - 1e-15].
[[nodiscard]] double ad_statistic(std::span<const double> sample, const UnivariateStableParams& p);

/// A^2 of values already transformed to (0, 1) against the uniform law.
[[nodiscard]] double ad_statistic_uniform(std::span<const double> u);

/// Parametric bootstrap AD test of a stable fit (fit_univariate). Each of
/// the B replicates simulates from the fitted law with seed + r, refits and
/// recomputes A^2. Throws EstimationError when more than 10% of the
/// replicates fail.
[[nodiscard]] TestReport ad_test(std::span<const double> sample, std::size_t B, std::uint64_t seed, double level = 0.95);

/// M_i = (1/n) #{j : X_j < X_i componentwise} for d = 2 or 3.
[[nodiscard]] std::vector<double> kendall_empirical(const ReturnMatrix& data);

/// K(t) = (1/n) #{i : M_i <= t}.
[[nodiscard]] double kendall_function(std::span<const double> sorted_m, double t);

/// m * integral of (K_data - K_ref)^2 over [0, 1], trapezoid rule on 512
/// equispaced points, where m is the size of the data sample.
[[nodiscard]] double kendall_cvm_statistic(std::span<const double> m_data, std::span<const double> m_reference);

/// Bootstrap Cramer-von Mises test on Kendall functions for a fitted
/// discrete spectral measure. The reference Kendall function comes from a
/// simulated sample of 10 m points; every replicate refits the measure.
[[nodiscard]] TestReport kendall_cvm_test(const ReturnMatrix& data, std::size_t n_grid, std::size_t B,
                                          std::uint64_t seed, const SpectralFitOptions& options = {},
                                          double level = 0.95);

/// Bootstrap test that all marginal alphas are equal. Statistic: largest
/// pairwise difference of the ML marginal alphas; the null law is the
/// spectral fit on an n_grid grid at the pooled alpha.
[[nodiscard]] TestReport alpha_equality_test(const ReturnMatrix& data, std::size_t B, std::uint64_t seed,
                                             std::size_t n_grid = 8, double level = 0.95);

/// Largest pairwise |alpha_l - alpha_k| of ML fits to the columns.
[[nodiscard]] double alpha_spread(const ReturnMatrix& data);

}  // namespace mvstable
