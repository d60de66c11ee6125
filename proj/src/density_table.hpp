#pragma once

#include "inversion.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace mvstable::detail {

/// log of a density value with a small additive floor. The inversion is
/// accurate to about 1e-14 in absolute terms, so below that the value is
/// noise (thin tails of totally skewed laws, or points outside a one-sided
/// support); the floor keeps such points at a fixed, finite penalty
/// instead of letting the noise drive the likelihood.
inline double log_density_floor(double f) { return std::log(std::max(f, 0.0) + 1e-13); }

/// Cubic spline of a standardized stable function over u = asinh(z),
/// covering [z_min, z_max]. In u the log-density is close to linear in
/// both tails, so a modest number of nodes reproduces it to ~1e-7.
/// Used where the same law is evaluated at many points (likelihoods,
/// EDF statistics).
class StandardTable {
public:
    enum class Kind { log_pdf, cdf };

    static constexpr double kStep = 0.08;
    static constexpr double kPad = 4.0;

    StandardTable(Kind kind, double alpha, double beta, double z_min, double z_max) : kind_(kind) {
        u_min_ = std::asinh(z_min);
        u_max_ = std::asinh(z_max);
        // The spline is least accurate next to its end points, so the nodes
        // extend a few steps past the requested range, stopping at the edge
        // of the support for totally skewed laws with alpha < 1.
        double lo = u_min_ - kPad * kStep;
        double hi = u_max_ + kPad * kStep;
        if (alpha < 1.0 && std::abs(beta) == 1.0) {
            const double edge = std::asinh(-beta * std::tan(0.5 * std::numbers::pi * alpha));
            if (beta > 0.0) lo = std::max(lo, std::min(edge, u_min_));
            else hi = std::min(hi, std::max(edge, u_max_));
        }
        const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / kStep)) + 1;
        const std::size_t nodes = std::max<std::size_t>(count, 5);
        const double h = (hi - lo) / static_cast<double>(nodes - 1);
        std::vector<double> values(nodes);
        for (std::size_t i = 0; i < nodes; ++i) {
            const double z = std::sinh(lo + h * static_cast<double>(i));
            values[i] = kind == Kind::log_pdf ? log_density_floor(standard_pdf(alpha, beta, z)) : standard_cdf(alpha, beta, z);
        }
        if (h > 0.0) spline_ = boost::math::interpolators::cardinal_cubic_b_spline<double>(values.data(), nodes, lo, h);
        else constant_ = values.front();
    }

    /// Interpolated value at z; z must lie inside the tabulated range.
    [[nodiscard]] double operator()(double z) const {
        if (u_max_ <= u_min_) return constant_;
        const double u = std::clamp(std::asinh(z), u_min_, u_max_);
        const double v = spline_(u);
        return kind_ == Kind::cdf ? std::clamp(v, 0.0, 1.0) : v;
    }

private:
    Kind kind_;
    double u_min_ = 0.0;
    double u_max_ = 0.0;
    double constant_ = 0.0;
    boost::math::interpolators::cardinal_cubic_b_spline<double> spline_;
};

}  // namespace mvstable::detail
