#include "oracles.hpp"

#include "mvstable/error.hpp"
#include "mvstable/gof.hpp"
#include "mvstable/random.hpp"
#include "mvstable/sampler.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace mvstable;

TEST_CASE("AD statistic") {
    const std::vector<double> half{0.5};
    CHECK(ad_statistic_uniform(half) == doctest::Approx(2 * std::log(2.0) - 1).epsilon(1e-14));

    const UnivariateStableParams p{1.3, 0.2, 1.1, 0.4};
    const auto x = sample_univariate(p, 200, 1);
    std::vector<double> u;
    for (double v : x) u.push_back(cdf(p, v));
    CHECK(ad_statistic(x, p) == doctest::Approx(ad_statistic_uniform(u)).epsilon(1e-12));

    // Direct evaluation of the defining sum.
    auto s = u;
    std::sort(s.begin(), s.end());
    const auto n = static_cast<double>(s.size());
    double sum = 0;
    for (std::size_t i = 1; i <= s.size(); ++i)
        sum += (2.0 * static_cast<double>(i) - 1) * (std::log(s[i - 1]) + std::log(1 - s[s.size() - i]));
    CHECK(ad_statistic_uniform(u) == doctest::Approx(-n - sum / n).epsilon(1e-12));

    CHECK(ad_statistic(x, p) < 2.5);
    const UnivariateStableParams shifted{1.3, 0.2, 1.1, 0.4 + 5 * 1.1};
    CHECK(ad_statistic(x, shifted) > 10);
    CHECK_THROWS_AS((void)ad_statistic_uniform(std::vector<double>{}), ParameterError);
}

TEST_CASE("ad_test") {
    const auto x = sample_univariate({1.25, 0, 1.4, 0}, 300, 2);
    const auto a = ad_test(x, 100, 7);
    const auto b = ad_test(x, 100, 7);
    CHECK(a.statistic == b.statistic);
    CHECK(a.critical_value == b.critical_value);
    CHECK(a.replicates + a.failed == 100);
    CHECK(a.reject == (a.statistic > a.critical_value));
    CHECK(a.critical_value > 0.5);
    CHECK(a.critical_value < 5.0);
    CHECK_THROWS_AS((void)ad_test(x, 99, 7), ParameterError);

    // Two well separated normal components are not stable.
    std::vector<double> mix;
    Rng rng(3);
    for (int i = 0; i < 300; ++i) mix.push_back((i % 2 ? 4.0 : -4.0) + 0.5 * rng.normal());
    CHECK(ad_test(mix, 100, 8).reject);
}

TEST_CASE("Kendall M values") {
    auto two = ReturnMatrix::from_values((Eigen::MatrixXd(2, 2) << 0, 0, 1, 1).finished());
    const auto m = kendall_empirical(two);
    CHECK(m == std::vector<double>{0.0, 0.5});

    Eigen::MatrixXd co(50, 2);
    Rng rng(4);
    for (Eigen::Index i = 0; i < 50; ++i) {
        co(i, 0) = rng.normal();
        co(i, 1) = std::exp(co(i, 0));
    }
    const auto mc = kendall_empirical(ReturnMatrix::from_values(co));
    for (Eigen::Index i = 0; i < 50; ++i) {
        const auto rank = (co.col(0).array() < co(i, 0)).count();
        CHECK(mc[static_cast<std::size_t>(i)] == doctest::Approx(static_cast<double>(rank) / 50.0));
    }

    for (Eigen::Index d : {2, 3}) {
        Eigen::MatrixXd x(200, d);
        for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = std::round(4 * rng.normal());  // with ties
        CHECK(kendall_empirical(ReturnMatrix::from_values(x)) == oracle::kendall_brute(x));
        // Rank statistic: strictly increasing maps of each coordinate.
        Eigen::MatrixXd y = x;
        y.col(0) = x.col(0).array().exp();
        y.col(1) = x.col(1).array().pow(3) + 2;
        CHECK(kendall_empirical(ReturnMatrix::from_values(y)) == kendall_empirical(ReturnMatrix::from_values(x)));
    }
    CHECK_THROWS_AS((void)kendall_empirical(ReturnMatrix::from_values(Eigen::MatrixXd::Zero(5, 4))), UnsupportedError);
}

TEST_CASE("Kendall function and CvM statistic") {
    std::vector<double> m{0.0, 0.1, 0.1, 0.3, 0.6};
    CHECK(kendall_function(m, -0.1) == 0.0);
    CHECK(kendall_function(m, 0.1) == doctest::Approx(0.6));
    CHECK(kendall_function(m, 1.0) == 1.0);
    double prev = 0;
    for (double t = 0; t <= 1; t += 0.01) {
        CHECK(kendall_function(m, t) >= prev);
        prev = kendall_function(m, t);
    }
    CHECK(kendall_cvm_statistic(m, m) == 0.0);
    // K_a = 1 on [0, 1], K_b = 1{t >= 0.5}: m * 0.5 up to trapezoid error.
    std::vector<double> a(10, 0.0), b(10, 0.5);
    CHECK(kendall_cvm_statistic(a, b) == doctest::Approx(10 * 0.5).epsilon(1e-2));
}

TEST_CASE("kendall_cvm_test determinism") {
    const DiscreteSpectralMeasure m(1.4, {0, 0}, {{{1, 0}, 1}, {{0.6, 0.8}, 0.7}, {{-1, 0}, 0.4}, {{0, -1}, 0.8}});
    const auto x = sample_multivariate(m, 300, 5);
    const auto a = kendall_cvm_test(x, 4, 100, 9);
    const auto b = kendall_cvm_test(x, 4, 100, 9);
    CHECK(a.statistic == b.statistic);
    CHECK(a.critical_value == b.critical_value);
    CHECK(a.reject == (a.statistic > a.critical_value));
    CHECK(a.seed == 9);
}

TEST_CASE("alpha equality") {
    const DiscreteSpectralMeasure m(1.3, {0, 0}, {{{1, 0}, 1}, {{0, 1}, 1}, {{-0.6, 0.8}, 0.5}});
    const auto x = sample_multivariate(m, 400, 6);
    const double s = alpha_spread(x);
    CHECK(s == doctest::Approx(std::abs(fit_univariate(x.column(0)).alpha - fit_univariate(x.column(1)).alpha)));
    const auto r = alpha_equality_test(x, 100, 3);
    CHECK(r.statistic == s);
    CHECK(r.reject == (r.statistic > r.critical_value));

    Eigen::MatrixXd v(400, 2);
    const auto c0 = sample_univariate({1.1, 0, 1, 0}, 400, 7);
    const auto c1 = sample_univariate({1.9, 0, 1, 0}, 400, 8);
    for (Eigen::Index i = 0; i < 400; ++i) {
        v(i, 0) = c0[static_cast<std::size_t>(i)];
        v(i, 1) = c1[static_cast<std::size_t>(i)];
    }
    CHECK(alpha_equality_test(ReturnMatrix::from_values(v), 100, 4).reject);
}
