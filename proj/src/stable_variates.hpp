#pragma once

#include "mvstable/random.hpp"

#include <cmath>
#include <numbers>

namespace mvstable::detail {

/// Chambers-Mallows-Stuck draw from the S1 law with characteristic function
/// exp(-|t|^alpha (1 - i beta tan(pi alpha / 2) sgn t)). alpha = 1 is only
/// valid with beta = 0 (Cauchy).
class CmsGenerator {
public:
    CmsGenerator(double alpha, double beta) : alpha_(alpha) {
        if (alpha != 1.0) {
            const double bk = beta * std::tan(0.5 * std::numbers::pi * alpha);
            b_ = std::atan(bk) / alpha;
            s_ = std::pow(1.0 + bk * bk, 0.5 / alpha);
        }
    }

    double operator()(Rng& rng) const {
        const double v = rng.uniform_angle();
        const double w = rng.exponential();
        if (alpha_ == 1.0) return std::tan(v);
        if (alpha_ == 2.0) return 2.0 * std::sin(v) * std::sqrt(w);
        const double avb = alpha_ * (v + b_);
        return s_ * std::sin(avb) / std::pow(std::cos(v), 1.0 / alpha_) *
               std::pow(std::cos(v - avb) / w, (1.0 - alpha_) / alpha_);
    }

private:
    double alpha_;
    double b_ = 0.0;
    double s_ = 1.0;
};

}  // namespace mvstable::detail
