#pragma once

// Standardized (gamma = 1, delta = 0) stable density and distribution
// function by Fourier inversion of the S0 characteristic function.

namespace mvstable::detail {

[[nodiscard]] double standard_pdf(double alpha, double beta, double z);
[[nodiscard]] double standard_cdf(double alpha, double beta, double z);

}  // namespace mvstable::detail
