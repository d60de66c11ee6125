#pragma once

#include "mvstable/data.hpp"
#include "mvstable/spectral.hpp"

#include <cstddef>
#include <cstdint>

namespace mvstable {

/// n draws of X = delta + sum_i lambda_i^{1/alpha} Z_i s_i with independent
/// totally skewed Z_i (log characteristic function -psi(t; alpha)).
/// alpha = 1 is rejected. Identical (m, n, seed) give identical output.
[[nodiscard]] ReturnMatrix sample_multivariate(const DiscreteSpectralMeasure& m, std::size_t n, std::uint64_t seed);

}  // namespace mvstable
