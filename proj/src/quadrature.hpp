#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace mvstable::detail {

/// Globally adaptive 15-point Gauss-Kronrod integration in the QUADPACK
/// style: the interval with the largest error estimate is bisected until
/// the summed estimate meets max(abs_tol, rel_tol * |result|).
/// `breaks` is the initial partition (ascending, at least two points).
template <class F>
double adaptive_kronrod(F&& f, const std::vector<double>& breaks, double abs_tol, double rel_tol,
                        std::size_t max_intervals = 4000) {
    using rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    static const auto& xk = rule::abscissa();
    static const auto& wk = rule::weights();
    // Gauss nodes sit at the even Kronrod indices.
    static const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();

    struct Piece {
        double a, b, value, error;
        bool operator<(const Piece& o) const { return error < o.error; }
    };

    auto apply = [&](double a, double b) {
        const double c = 0.5 * (a + b);
        const double h = 0.5 * (b - a);
        const double fc = f(c);
        double kronrod = fc * wk[0];
        double gauss = fc * wg[0];
        std::array<double, 8> f_left{};
        std::array<double, 8> f_right{};
        for (std::size_t i = 1; i < xk.size(); ++i) {
            f_left[i] = f(c - h * xk[i]);
            f_right[i] = f(c + h * xk[i]);
            const double fsum = f_left[i] + f_right[i];
            kronrod += fsum * wk[i];
            if (i % 2 == 0) gauss += fsum * wg[i / 2];
        }
        // QUADPACK error scaling: |K - G| grossly overstates the Kronrod
        // error on smooth pieces, so it is sharpened against the deviation
        // of f from its mean on the piece.
        const double mean = 0.5 * kronrod;
        double spread = wk[0] * std::abs(fc - mean);
        for (std::size_t i = 1; i < xk.size(); ++i)
            spread += wk[i] * (std::abs(f_left[i] - mean) + std::abs(f_right[i] - mean));
        double err = std::abs(kronrod - gauss);
        if (spread > 0.0 && err > 0.0) err = spread * std::min(1.0, std::pow(200.0 * err / spread, 1.5));
        return Piece{a, b, kronrod * h, err * h};
    };

    std::priority_queue<Piece> heap;
    double total = 0.0;
    double error = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        Piece p = apply(breaks[i], breaks[i + 1]);
        total += p.value;
        error += p.error;
        heap.push(p);
    }
    while (!heap.empty() && error > std::max(abs_tol, rel_tol * std::abs(total)) &&
           heap.size() < max_intervals) {
        const Piece worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval at machine resolution
        heap.pop();
        const Piece left = apply(worst.a, mid);
        const Piece right = apply(mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    return total;
}

}  // namespace mvstable::detail
