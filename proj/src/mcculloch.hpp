#pragma once

// Lookup tables of McCulloch's (1986) quantile estimator with bilinear
// interpolation. Table arguments are clamped to the tabulated ranges.

namespace mvstable::detail {

inline constexpr double kNuAlphaMin = 2.439;
inline constexpr double kNuAlphaMax = 25.0;

/// alpha as a function of nu_alpha and |nu_beta|.
[[nodiscard]] double table_alpha(double nu_alpha, double abs_nu_beta);

/// |beta| as a function of nu_alpha and |nu_beta| (not clamped to 1).
[[nodiscard]] double table_beta(double nu_alpha, double abs_nu_beta);

/// (x_.75 - x_.25) / gamma as a function of alpha and beta.
[[nodiscard]] double table_scale(double alpha, double beta);

/// (zeta - x_.5) / gamma as a function of alpha and beta, where zeta is the
/// S0 location for alpha != 1.
[[nodiscard]] double table_location(double alpha, double beta);

}  // namespace mvstable::detail
