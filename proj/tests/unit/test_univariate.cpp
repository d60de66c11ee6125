#include "oracles.hpp"

#include "mvstable/error.hpp"
#include "mvstable/sample_stats.hpp"
#include "mvstable/univariate.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mvstable;
using std::numbers::pi;

namespace {

oracle::Stable as_oracle(const UnivariateStableParams& p) { return {p.alpha, p.beta, p.gamma, p.delta}; }

/// 101 points whose type-7 quantiles at multiples of 0.01 are exactly q(i/100).
template <class Q>
std::vector<double> exact_quantile_sample(Q q) {
    std::vector<double> x;
    for (int i = 1; i < 100; ++i) x.push_back(q(i / 100.0));
    x.insert(x.begin(), x.front() - 1e3);
    x.push_back(x.back() + 1e3);
    return x;
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((void)pdf({0.0, 0, 1, 0}, 0), ParameterError);
    CHECK_THROWS_AS((void)pdf({2.1, 0, 1, 0}, 0), ParameterError);
    CHECK_THROWS_AS((void)cdf({1.5, 1.1, 1, 0}, 0), ParameterError);
    CHECK_THROWS_AS((void)cdf({1.5, 0, 0, 0}, 0), ParameterError);
    CHECK_THROWS_AS((void)charfun({1.5, 0, 1, std::nan("")}, 1), ParameterError);
}

TEST_CASE("charfun special cases") {
    for (const UnivariateStableParams& p :
         {UnivariateStableParams{1.3, 0.5, 2, 1}, {0.7, -1, 0.5, 3}, {1, 0.4, 1.2, -1}, {2, 0, 1, 0}}) {
        const auto v = charfun(p, 0.0);
        CHECK(v.real() == 1.0);
        CHECK(v.imag() == 0.0);
    }
    for (double t : {-3.0, -0.5, 0.25, 2.0}) {
        const auto n = charfun({2, 0, 1.5, 0.7}, t);
        const auto expected = std::exp(std::complex<double>(-1.5 * 1.5 * t * t, 0.7 * t));
        CHECK(std::abs(n - expected) < 1e-15);
        CHECK(std::abs(charfun({1, 0, 1, 0}, t) - std::exp(-std::abs(t))) < 1e-15);
    }
}

TEST_CASE("charfun modulus and agreement with the written-out form") {
    for (const UnivariateStableParams& p :
         {UnivariateStableParams{1.3, 0.5, 2, 1}, {0.7, -1, 0.5, 3}, {1, 0.4, 1.2, -1}, {1.9, 0.9, 0.3, 0}}) {
        for (double t = -5.0; t <= 5.0; t += 0.37) {
            const auto v = charfun(p, t);
            CHECK(std::abs(v) == doctest::Approx(std::exp(-std::pow(p.gamma * std::abs(t), p.alpha))).epsilon(1e-12));
            CHECK(std::abs(v - oracle::charfun(as_oracle(p), t)) < 1e-13);
        }
    }
}

TEST_CASE("pdf closed forms") {
    CHECK(pdf({2, 0, 1, 0}, 0) == doctest::Approx(1.0 / (2.0 * std::sqrt(pi))).epsilon(1e-12));
    CHECK(pdf({1, 0, 1, 0}, 0) == doctest::Approx(1.0 / pi).epsilon(1e-12));
    // Symmetric laws: f(0) = Gamma(1 + 1/alpha) / (pi gamma).
    for (double a : {0.6, 1.5, 1.8})
        CHECK(pdf({a, 0, 2, 0}, 0) == doctest::Approx(boost::math::tgamma(1 + 1 / a) / (2 * pi)).epsilon(1e-10));
    // Levy law: S0(1/2, 1, 1, 0) is the standard Levy law moved to -1.
    for (double x : {-0.5, 0.0, 1.0, 4.0}) {
        const double y = x + 1.0;
        const double levy = std::sqrt(1 / (2 * pi)) * std::pow(y, -1.5) * std::exp(-1 / (2 * y));
        CHECK(pdf({0.5, 1, 1, 0}, x) == doctest::Approx(levy).epsilon(1e-8));
    }
    CHECK(pdf({0.5, 1, 1, 0}, -1.5) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("pdf and cdf against real-axis inversion") {
    for (const UnivariateStableParams& p :
         {UnivariateStableParams{1.5, 0, 1, 0}, {1.3, 0.5, 1, 0}, {1.1, -0.8, 2, 1}, {1.8, 0.9, 0.5, -1}}) {
        for (double x : {-4.0, -1.0, 0.0, 0.5, 2.0, 6.0}) {
            CHECK(pdf(p, x) == doctest::Approx(oracle::pdf(as_oracle(p), x)).epsilon(1e-9));
            CHECK(cdf(p, x) == doctest::Approx(oracle::cdf(as_oracle(p), x)).epsilon(1e-9));
        }
    }
    CHECK(cdf({1.3, 0.5, 1, 0}, 2) == doctest::Approx(oracle::cdf({1.3, 0.5, 1, 0}, 2)).epsilon(1e-10));
}

TEST_CASE("normal and Cauchy special cases over a grid") {
    const boost::math::normal_distribution<double> N(0.5, std::sqrt(2.0) * 1.5);
    for (int i = 0; i < 200; ++i) {
        const double x = 0.5 + 1.5 * (-10.0 + 20.0 * i / 199.0);
        CHECK(std::abs(pdf({2, 0, 1.5, 0.5}, x) - boost::math::pdf(N, x)) < 1e-10);
        CHECK(std::abs(cdf({2, 0, 1.5, 0.5}, x) - boost::math::cdf(N, x)) < 1e-10);
        const double z = (x - 0.5) / 1.5;
        CHECK(std::abs(pdf({1, 0, 1.5, 0.5}, x) - 1 / (pi * 1.5 * (1 + z * z))) < 1e-10);
        CHECK(std::abs(cdf({1, 0, 1.5, 0.5}, x) - (0.5 + std::atan(z) / pi)) < 1e-10);
    }
    CHECK(cdf({1, 0, 1, 0}, 1) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(cdf({2, 0, 1, 0}, 0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("standardization and symmetry") {
    const UnivariateStableParams p{1.4, 0.6, 2.5, -1.2}, s{1.4, 0.6, 1, 0};
    for (double x = -20; x <= 20; x += 1.7) CHECK(pdf(p, x) == doctest::Approx(pdf(s, (x + 1.2) / 2.5) / 2.5).epsilon(1e-8));
    const UnivariateStableParams sym{1.2, 0, 1.3, 0.4};
    for (double u : {0.1, 1.0, 5.0, 40.0}) CHECK(cdf(sym, 0.4 - u) == doctest::Approx(1 - cdf(sym, 0.4 + u)).epsilon(1e-12));
}

TEST_CASE("pdf integrates to one, is nonnegative and unimodal") {
    for (const UnivariateStableParams& p : {UnivariateStableParams{1.3, 0.5, 1, 0}, {0.8, -0.5, 1, 0}}) {
        // Integral over [-L, L] plus the tails from the cdf.
        double total = 0, prev = 0;
        int sign_changes = 0, last_sign = 0;
        const double L = 30, h = 0.01;
        for (double x = -L; x < L; x += h) {
            const double f = pdf(p, x + h / 2);
            CHECK(f >= 0.0);
            total += f * h;
            const int sgn = f > prev ? 1 : (f < prev ? -1 : 0);
            if (sgn != 0 && last_sign != 0 && sgn != last_sign) ++sign_changes;
            if (sgn != 0) last_sign = sgn;
            prev = f;
        }
        total += cdf(p, -L) + (1 - cdf(p, L));
        CHECK(total == doctest::Approx(1.0).epsilon(1e-5));
        CHECK(sign_changes == 1);
    }
}

TEST_CASE("cdf is monotone with limits") {
    const UnivariateStableParams p{0.9, 0.7, 1, 0};
    double prev = 0;
    for (double x = -200; x <= 200; x += 0.5) {
        const double F = cdf(p, x);
        CHECK(F >= prev - 1e-14);
        prev = F;
    }
    CHECK(cdf(p, -1e12) < 1e-6);
    CHECK(cdf(p, 1e12) > 1 - 1e-6);
}

TEST_CASE("cdf_many agrees with cdf") {
    const UnivariateStableParams p{1.25, 0.3, 1.4, 0.2};
    const auto x = sample_univariate(p, 3000, 11);
    const auto many = cdf_many(p, x);
    double worst = 0;
    for (std::size_t i = 0; i < x.size(); i += 7) worst = std::max(worst, std::abs(many[i] - cdf(p, x[i])));
    CHECK(worst < 1e-6);
    const auto few = cdf_many(p, std::span(x).first(50));
    for (std::size_t i = 0; i < 50; ++i) CHECK(few[i] == cdf(p, x[i]));
}

TEST_CASE("quantile") {
    CHECK(quantile({1, 0, 1, 0}, 0.75) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(quantile({2, 0, 3, 1.5}, 0.5) == doctest::Approx(1.5).epsilon(1e-12));
    const double q = quantile({1.2, 0, 1, 0}, 0.99);
    CHECK(q == doctest::Approx(oracle::quantile({1.2, 0, 1, 0}, 0.99, 5, 60)).epsilon(1e-9));
    for (double qq = 0.01; qq < 0.995; qq += 0.01) {
        const UnivariateStableParams p{1.6, -0.4, 0.7, 2};
        CHECK(std::abs(cdf(p, quantile(p, qq)) - qq) < 1e-8);
    }
    CHECK_THROWS_AS((void)quantile({1.5, 0, 1, 0}, 0.0), ParameterError);
    CHECK_THROWS_AS((void)quantile({1.5, 0, 1, 0}, 1.0), ParameterError);
}

TEST_CASE("fit_quantile on exact quantiles") {
    const auto cauchy = exact_quantile_sample([](double p) { return std::tan(pi * (p - 0.5)); });
    const auto c = fit_quantile(cauchy);
    // The tabulated quantile ratios are rounded; alpha lands about 1% high.
    CHECK(c.alpha == doctest::Approx(1.0).epsilon(0.015));
    CHECK(std::abs(c.beta) < 1e-10);
    CHECK(c.gamma == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(c.delta) < 1e-3);

    const boost::math::normal_distribution<double> N;
    const auto normal = exact_quantile_sample([&](double p) { return boost::math::quantile(N, p); });
    CHECK(fit_quantile(normal).alpha == 2.0);

    auto mirrored = sample_univariate({1.3, 0.8, 1, 0}, 500, 3);
    const double med = sample_quantile(mirrored, 0.5);
    const std::size_t n = mirrored.size();
    for (std::size_t i = 0; i < n; ++i) mirrored.push_back(2 * med - mirrored[i]);
    CHECK(fit_quantile(mirrored).beta == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)fit_quantile(std::vector<double>(200, 1.0)), EstimationError);
}

TEST_CASE("fit_quantile converges with sample size") {
    const UnivariateStableParams p{1.5, 0.3, 1, 0};
    auto error = [&](std::size_t n) {
        double s = 0;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto f = fit_quantile(sample_univariate(p, n, seed));
            s += std::abs(f.alpha - p.alpha) + std::abs(f.gamma - p.gamma);
        }
        return s / 10;
    };
    CHECK(error(16000) < 0.75 * error(1000));
}

TEST_CASE("ML alpha") {
    const auto normal = sample_univariate({2, 0, 1, 0}, 2000, 5);
    CHECK(fit_univariate(normal).alpha >= 1.95);
    const auto crypto = sample_univariate({1.25, 0, 1.4, 0}, 1000, 9);
    const auto f = fit_univariate(crypto);
    CHECK(f.alpha == doctest::Approx(1.25).epsilon(0.06 / 1.25));
    CHECK(f.gamma == doctest::Approx(1.4).epsilon(0.1));
}

TEST_CASE("sample_univariate") {
    const auto g = sample_univariate({2, 0, 1, 0}, 100000, 1);
    CHECK(variance(g) == doctest::Approx(2.0).epsilon(0.05));
    const auto c = sample_univariate({1, 0, 1, 0}, 100000, 2);
    CHECK(std::abs(sample_quantile(c, 0.75) - 1.0) < 0.05);

    const UnivariateStableParams p{1.3, 0.5, 1, 0};
    const auto x = sample_univariate(p, 100000, 3);
    for (double t : {0.5, 1.0, 2.0}) {
        std::complex<double> e = 0;
        for (double v : x) e += std::exp(std::complex<double>(0, t * v));
        e /= static_cast<double>(x.size());
        CHECK(std::abs(e - charfun(p, t)) < 3 / std::sqrt(static_cast<double>(x.size())));
    }
    CHECK(sample_univariate(p, 10, 42) == sample_univariate(p, 10, 42));
    CHECK(sample_univariate(p, 10, 42) != sample_univariate(p, 10, 43));
    CHECK_THROWS_AS((void)sample_univariate({1, 0.5, 1, 0}, 10, 1), UnsupportedError);
    CHECK_NOTHROW((void)sample_univariate({1, 0, 1, 0}, 10, 1));
}
