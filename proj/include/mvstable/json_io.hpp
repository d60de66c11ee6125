#pragma once

#include "mvstable/estimator.hpp"
#include "mvstable/gof.hpp"
#include "mvstable/risk.hpp"
#include "mvstable/spectral.hpp"
#include "mvstable/univariate.hpp"

#include <json.hpp>

#include <filesystem>

namespace mvstable {

// Measure files look like
//   {"alpha": 1.5, "delta": [0, 0], "atoms": [{"s": [1, 0], "lambda": 0.5}, ...]}

[[nodiscard]] nlohmann::json to_json(const UnivariateStableParams& p);
[[nodiscard]] UnivariateStableParams params_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json to_json(const DiscreteSpectralMeasure& m);
/// Throws LoadError on missing fields, ParameterError on invalid values.
[[nodiscard]] DiscreteSpectralMeasure measure_from_json(const nlohmann::json& j);

/// The measure under "measure" plus the pooled alpha, residual norm,
/// quantile locations and per-direction fits.
[[nodiscard]] nlohmann::json to_json(const EstimationReport& r);

[[nodiscard]] nlohmann::json to_json(const TestReport& r);
[[nodiscard]] nlohmann::json to_json(const GpdParams& g);

[[nodiscard]] DiscreteSpectralMeasure load_measure(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace mvstable
