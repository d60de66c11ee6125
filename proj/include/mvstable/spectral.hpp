#pragma once

#include "mvstable/univariate.hpp"

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mvstable {

/// Point mass `lambda` at the unit vector `s`.
struct Atom {
    std::vector<double> s;
    double lambda = 0.0;
};

/// Multivariate stable law with a discrete spectral measure: characteristic
/// function exp(-sum_i psi(t's_i; alpha) lambda_i + i t'delta).
class DiscreteSpectralMeasure {
public:
    /// Throws ParameterError on non-unit sites (tolerance 1e-12), negative
    /// or all-zero weights, duplicated sites (chord distance <= 1e-9),
    /// mismatched dimensions, d < 2, or alpha outside (0, 2].
    DiscreteSpectralMeasure(double alpha, std::vector<double> delta, std::vector<Atom> atoms);

    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] const std::vector<double>& delta() const { return delta_; }
    [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
    [[nodiscard]] std::size_t dim() const { return delta_.size(); }

private:
    double alpha_;
    std::vector<double> delta_;
    std::vector<Atom> atoms_;
};

/// Parameter functions of the projection u'X, which is
/// S1(alpha, beta, gamma, delta): delta here is the S1 location.
struct ProjectionParams {
    double gamma = 1.0;
    double beta = 0.0;
    double delta = 0.0;
};

/// psi(u; alpha) = |u|^alpha (1 - i tan(pi alpha/2) sgn u) for alpha != 1 and
/// |u| (1 + i (2/pi) sgn u log|u|) for alpha = 1.
[[nodiscard]] std::complex<double> psi(double u, double alpha);

[[nodiscard]] std::complex<double> charfun_mv(const DiscreteSpectralMeasure& m, std::span<const double> t);

/// Throws EstimationError when u is orthogonal to every weighted atom.
[[nodiscard]] ProjectionParams projection_params(const DiscreteSpectralMeasure& m, std::span<const double> u);

/// I(t) = sum_i psi(t's_i) lambda_i, assembled from the projection
/// parameters with the location removed: gamma^alpha (1 - i beta tan(pi alpha/2))
/// for alpha != 1 and gamma - i delta for alpha = 1.
[[nodiscard]] std::complex<double> I_of_t(const DiscreteSpectralMeasure& m, std::span<const double> t);

/// I(t) from the projection parameters of a centered law.
[[nodiscard]] std::complex<double> projection_exponent(double alpha, const ProjectionParams& p);

/// Law of coordinate k (0-based) in the S0 parametrization.
[[nodiscard]] UnivariateStableParams marginal_params(const DiscreteSpectralMeasure& m, std::size_t k);

/// S1 location of a stable law -> S0 location.
[[nodiscard]] double s1_to_s0_location(double alpha, double beta, double gamma, double delta1);

}  // namespace mvstable
