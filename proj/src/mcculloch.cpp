#include "mcculloch.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace mvstable::detail {
namespace {

constexpr std::array<double, 15> kNuAlpha = {2.439, 2.5, 2.6, 2.7, 2.8, 3.0, 3.2, 3.5,
                                             4.0,   5.0, 6.0, 8.0, 10., 15., 25.};
constexpr std::array<double, 7> kNuBeta = {0.0, 0.1, 0.2, 0.3, 0.5, 0.7, 1.0};

using AlphaBetaTable = std::array<std::array<double, 7>, 15>;

constexpr AlphaBetaTable kAlpha = {{
    {2.000, 2.000, 2.000, 2.000, 2.000, 2.000, 2.000},
    {1.916, 1.924, 1.924, 1.924, 1.924, 1.924, 1.924},
    {1.808, 1.813, 1.829, 1.829, 1.829, 1.829, 1.829},
    {1.729, 1.730, 1.737, 1.745, 1.745, 1.745, 1.745},
    {1.664, 1.663, 1.663, 1.668, 1.676, 1.676, 1.676},
    {1.563, 1.560, 1.553, 1.548, 1.547, 1.547, 1.547},
    {1.484, 1.480, 1.471, 1.460, 1.448, 1.438, 1.438},
    {1.391, 1.386, 1.378, 1.364, 1.337, 1.318, 1.318},
    {1.279, 1.273, 1.266, 1.250, 1.210, 1.184, 1.150},
    {1.128, 1.121, 1.114, 1.101, 1.067, 1.027, 0.973},
    {1.029, 1.021, 1.014, 1.004, 0.974, 0.935, 0.874},
    {0.896, 0.892, 0.884, 0.883, 0.855, 0.823, 0.769},
    {0.818, 0.812, 0.806, 0.801, 0.780, 0.756, 0.691},
    {0.698, 0.695, 0.692, 0.689, 0.676, 0.656, 0.597},
    {0.593, 0.590, 0.588, 0.586, 0.579, 0.563, 0.513},
}};

constexpr AlphaBetaTable kBeta = {{
    {0.0, 2.160, 1.000, 1.000, 1.000, 1.000, 1.000},
    {0.0, 1.592, 3.390, 1.000, 1.000, 1.000, 1.000},
    {0.0, 0.759, 1.800, 1.000, 1.000, 1.000, 1.000},
    {0.0, 0.482, 1.048, 1.694, 1.000, 1.000, 1.000},
    {0.0, 0.360, 0.760, 1.232, 2.229, 1.000, 1.000},
    {0.0, 0.253, 0.518, 0.823, 1.575, 1.000, 1.000},
    {0.0, 0.203, 0.410, 0.632, 1.244, 1.906, 1.000},
    {0.0, 0.165, 0.332, 0.499, 0.943, 1.560, 1.000},
    {0.0, 0.136, 0.271, 0.404, 0.689, 1.230, 2.195},
    {0.0, 0.109, 0.216, 0.323, 0.539, 0.827, 1.917},
    {0.0, 0.096, 0.190, 0.284, 0.472, 0.693, 1.759},
    {0.0, 0.082, 0.163, 0.243, 0.412, 0.601, 1.596},
    {0.0, 0.074, 0.147, 0.220, 0.377, 0.546, 1.482},
    {0.0, 0.064, 0.128, 0.191, 0.330, 0.478, 1.362},
    {0.0, 0.056, 0.112, 0.167, 0.285, 0.428, 1.274},
}};

// Rows alpha = 2.0, 1.9, ..., 0.5; columns beta = 0, 0.25, 0.5, 0.75, 1.
using ScaleTable = std::array<std::array<double, 5>, 16>;

constexpr ScaleTable kScale = {{
    {1.908, 1.908, 1.908, 1.908, 1.908},
    {1.914, 1.915, 1.916, 1.918, 1.921},
    {1.921, 1.922, 1.927, 1.936, 1.947},
    {1.927, 1.930, 1.943, 1.961, 1.987},
    {1.933, 1.940, 1.962, 1.997, 2.043},
    {1.939, 1.952, 1.988, 2.045, 2.116},
    {1.946, 1.967, 2.022, 2.106, 2.211},
    {1.955, 1.984, 2.067, 2.188, 2.333},
    {1.965, 2.007, 2.125, 2.294, 2.491},
    {1.980, 2.040, 2.205, 2.435, 2.696},
    {2.000, 2.085, 2.311, 2.624, 2.973},
    {2.040, 2.149, 2.461, 2.886, 3.356},
    {2.098, 2.244, 2.676, 3.265, 3.912},
    {2.189, 2.392, 3.004, 3.844, 4.775},
    {2.337, 2.634, 3.542, 4.808, 6.247},
    {2.588, 3.073, 4.534, 6.636, 9.144},
}};

constexpr ScaleTable kLocation = {{
    {0.0, 0.000, 0.000, 0.000, 0.000},
    {0.0, -0.017, -0.032, -0.049, -0.064},
    {0.0, -0.030, -0.061, -0.092, -0.123},
    {0.0, -0.043, -0.088, -0.132, -0.179},
    {0.0, -0.056, -0.111, -0.170, -0.232},
    {0.0, -0.066, -0.134, -0.206, -0.283},
    {0.0, -0.075, -0.154, -0.241, -0.335},
    {0.0, -0.084, -0.173, -0.276, -0.390},
    {0.0, -0.090, -0.192, -0.310, -0.447},
    {0.0, -0.095, -0.208, -0.346, -0.508},
    {0.0, -0.098, -0.223, -0.380, -0.576},
    {0.0, -0.099, -0.237, -0.424, -0.652},
    {0.0, -0.096, -0.250, -0.469, -0.742},
    {0.0, -0.089, -0.262, -0.520, -0.853},
    {0.0, -0.078, -0.272, -0.581, -0.997},
    {0.0, -0.061, -0.279, -0.659, -1.198},
}};

/// Cell index and fractional position of x on an ascending grid, clamped.
template <std::size_t N>
std::pair<std::size_t, double> locate(const std::array<double, N>& grid, double x) {
    x = std::clamp(x, grid.front(), grid.back());
    std::size_t i = std::upper_bound(grid.begin(), grid.end(), x) - grid.begin();
    i = std::clamp<std::size_t>(i, 1, N - 1) - 1;
    return {i, (x - grid[i]) / (grid[i + 1] - grid[i])};
}

template <class Table, std::size_t R, std::size_t C>
double bilinear(const Table& t, const std::array<double, R>& rows, const std::array<double, C>& cols, double r,
                double c) {
    const auto [i, u] = locate(rows, r);
    const auto [j, v] = locate(cols, c);
    return (1 - u) * (1 - v) * t[i][j] + (1 - u) * v * t[i][j + 1] + u * (1 - v) * t[i + 1][j] +
           u * v * t[i + 1][j + 1];
}

// The scale/location tables are indexed by alpha descending; this grid
// runs ascending over the reversed row index.
constexpr std::array<double, 16> kAlphaAxis = {0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2,
                                               1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0};
constexpr std::array<double, 5> kBetaAxis = {0.0, 0.25, 0.5, 0.75, 1.0};

double alpha_beta_lookup(const ScaleTable& t, double alpha, double abs_beta) {
    const auto [i, u] = locate(kAlphaAxis, alpha);
    const auto [j, v] = locate(kBetaAxis, abs_beta);
    auto at = [&](std::size_t r, std::size_t c) { return t[15 - r][c]; };
    return (1 - u) * (1 - v) * at(i, j) + (1 - u) * v * at(i, j + 1) + u * (1 - v) * at(i + 1, j) +
           u * v * at(i + 1, j + 1);
}

}  // namespace

double table_alpha(double nu_alpha, double abs_nu_beta) {
    return bilinear(kAlpha, kNuAlpha, kNuBeta, nu_alpha, abs_nu_beta);
}

double table_beta(double nu_alpha, double abs_nu_beta) {
    return bilinear(kBeta, kNuAlpha, kNuBeta, nu_alpha, abs_nu_beta);
}

double table_scale(double alpha, double beta) { return alpha_beta_lookup(kScale, alpha, std::abs(beta)); }

double table_location(double alpha, double beta) {
    const double v = alpha_beta_lookup(kLocation, alpha, std::abs(beta));
    return beta < 0.0 ? -v : v;
}

}  // namespace mvstable::detail
