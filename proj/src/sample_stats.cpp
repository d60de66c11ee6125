#include "mvstable/sample_stats.hpp"

#include "mvstable/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mvstable {

double sorted_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw ParameterError("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("quantile level outside [0,1]");
    const double h = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<double> sorted_copy(std::span<const double> sample) {
    std::vector<double> s(sample.begin(), sample.end());
    std::sort(s.begin(), s.end());
    return s;
}

double sample_quantile(std::span<const double> sample, double q) {
    const auto s = sorted_copy(sample);
    return sorted_quantile(s, q);
}

double mean(std::span<const double> x) {
    if (x.empty()) throw ParameterError("mean of an empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
    if (x.size() < 2) throw ParameterError("variance needs at least two values");
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

}  // namespace mvstable
