#pragma once

#include <span>
#include <vector>

namespace mvstable {

/// Sample quantile by linear interpolation of order statistics
/// (h = (n-1)q + 1, the "type 7" rule). `sorted` must be ascending.
[[nodiscard]] double sorted_quantile(std::span<const double> sorted, double q);

/// Same as sorted_quantile but sorts a copy first.
[[nodiscard]] double sample_quantile(std::span<const double> sample, double q);

[[nodiscard]] std::vector<double> sorted_copy(std::span<const double> sample);

[[nodiscard]] double mean(std::span<const double> x);

/// Unbiased sample variance.
[[nodiscard]] double variance(std::span<const double> x);

}  // namespace mvstable
