#include "oracles.hpp"

#include "mvstable/error.hpp"
#include "mvstable/estimator.hpp"
#include "mvstable/random.hpp"
#include "mvstable/sampler.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace mvstable;
using std::numbers::pi;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<std::complex<double>> exponents(const ProjectionGrid& g, double alpha, const Eigen::VectorXd& lambda) {
    std::vector<std::complex<double>> I(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) I[i] += psi(dot(g.point(i), g.point(j)), alpha) * lambda(static_cast<Eigen::Index>(j));
    return I;
}

DiscreteSpectralMeasure grid_measure(const ProjectionGrid& g, double alpha, std::vector<double> delta) {
    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < g.size(); ++j) atoms.push_back({g.point(j), 0.2 + 0.8 * static_cast<double>((j * 37) % 11) / 10.0});
    return {alpha, std::move(delta), std::move(atoms)};
}

}  // namespace

TEST_CASE("grid construction") {
    const auto g = make_grid(2, 4);
    REQUIRE(g.size() == 4);
    const std::vector<std::vector<double>> expected{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = 0; k < 2; ++k) CHECK(g.point(j)[k] == doctest::Approx(expected[j][k]).epsilon(1e-15));

    const auto g3 = make_grid(3, 4);
    REQUIRE(g3.size() == 12);
    CHECK(g3.point(0)[0] == doctest::Approx(std::cos(pi / 4)));
    CHECK(g3.point(0)[1] == doctest::Approx(std::sin(pi / 4)));
    CHECK(g3.point(0)[2] == 0.0);

    const auto g8 = make_grid(3, 8);
    REQUIRE(g8.size() == 24);
    std::set<std::vector<double>> distinct(g8.points().begin(), g8.points().end());
    CHECK(distinct.size() == 24);
    for (const auto& t : g8.points()) {
        CHECK(dot(t, t) == doctest::Approx(1.0).epsilon(1e-15));
        int nonzero = 0;
        for (double v : t) nonzero += std::abs(v) > 1e-12;
        CHECK(nonzero == 2);
    }
    for (std::size_t c = 0; c < g8.circles(); ++c)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t i = 0; i < 3; ++i) CHECK(g8.point(c * 8 + j + 4)[i] == -g8.point(c * 8 + j)[i]);

    CHECK_THROWS_AS((void)make_grid(2, 6 + 1), ConfigError);
    CHECK_THROWS_AS((void)make_grid(2, 2), ConfigError);
    CHECK_THROWS_AS((void)make_grid(1, 8), ConfigError);
}

TEST_CASE("system assembly identities") {
    const auto g = make_grid(2, 8);
    const double a = 1.5;
    Eigen::VectorXd lambda(8);
    lambda << 0.5, 0.2, 0.9, 0.1, 0.3, 0.6, 0.15, 0.4;
    const auto I = exponents(g, a, lambda);
    const auto sys = build_system(g, a, I);
    CHECK((sys.c - sys.A * lambda).norm() < 1e-13);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            const auto v = psi(dot(g.point(i), g.point(j)), a);
            const auto w = psi(dot(g.point(i + 4), g.point(j)), a);
            CHECK(sys.A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == v.real());
            CHECK(sys.A(static_cast<Eigen::Index>(i + 4), static_cast<Eigen::Index>(j)) == v.imag());
            CHECK(w == std::conj(v));
        }
        CHECK(sys.c(static_cast<Eigen::Index>(i)) == doctest::Approx(I[i].real()));
        CHECK(sys.c(static_cast<Eigen::Index>(i + 4)) == doctest::Approx(I[i].imag()));
    }
    // alpha = 2: the imaginary rows vanish and the system is singular.
    CHECK_THROWS_AS((void)build_system(g, 2.0, exponents(g, 2.0, lambda)), NumericalError);
    CHECK_THROWS_AS((void)build_system(g, a, std::vector<std::complex<double>>(3)), ParameterError);
}

TEST_CASE("block system for d = 3") {
    const auto g = make_grid(3, 8);
    const double a = 1.5;
    Eigen::VectorXd lambda = Eigen::VectorXd::LinSpaced(24, 0.1, 1.0);
    const auto block = build_system(g, a, exponents(g, a, lambda), Coupling::block);
    for (Eigen::Index i = 0; i < 24; ++i)
        for (Eigen::Index j = 0; j < 24; ++j)
            if (i / 8 != j / 8) CHECK(block.A(i, j) == 0.0);
    // Each diagonal block is the d = 2 system of its circle after rotation.
    const auto g2 = make_grid(2, 8);
    std::vector<std::complex<double>> I2(8, 0.0);
    const auto planar = build_system(g2, a, I2);
    for (Eigen::Index c = 0; c < 3; ++c)
        CHECK((block.A.block(8 * c, 8 * c, 8, 8) - planar.A).cwiseAbs().maxCoeff() < 1e-12);

    const auto full = build_system(g, a, exponents(g, a, lambda), Coupling::full);
    CHECK((full.c - full.A * lambda).norm() < 1e-12);
    CHECK(SpectralFitOptions{}.coupling == Coupling::full);
}

TEST_CASE("nnls examples") {
    Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd c(2);
    c << 1, -1;
    const auto x = nnls(I, c);
    CHECK(x(0) == doctest::Approx(1.0));
    CHECK(x(1) == 0.0);

    Rng rng(3);
    Eigen::MatrixXd A(6, 6);
    for (Eigen::Index i = 0; i < 36; ++i) A.data()[i] = rng.normal();
    Eigen::VectorXd x0(6);
    x0 << 1, 0.5, 2, 0.1, 3, 0.7;
    CHECK((nnls(A, A * x0) - x0).norm() < 1e-10);

    CHECK_THROWS_AS((void)nnls(A, Eigen::VectorXd::Zero(5)), ParameterError);
    CHECK(nnls(A, Eigen::VectorXd::Zero(6)).norm() == 0.0);
}

TEST_CASE("nnls matches brute force and satisfies KKT") {
    Rng rng(17);
    for (int rep = 0; rep < 50; ++rep) {
        Eigen::MatrixXd A(6, 6);
        Eigen::VectorXd c(6);
        for (Eigen::Index i = 0; i < 36; ++i) A.data()[i] = rng.normal();
        for (Eigen::Index i = 0; i < 6; ++i) c(i) = rng.normal();
        const auto x = nnls(A, c);
        const auto xb = oracle::nnls_brute(A, c);
        CHECK((c - A * x).squaredNorm() == doctest::Approx((c - A * xb).squaredNorm()).epsilon(1e-10));
        CHECK(x.minCoeff() >= 0.0);
        const Eigen::VectorXd w = A.transpose() * (c - A * x);
        const double tol = 1e-8 * (A.transpose() * c).norm();
        for (Eigen::Index j = 0; j < 6; ++j) {
            if (x(j) > 0) CHECK(std::abs(w(j)) <= tol);
            else CHECK(w(j) <= tol);
        }
    }
}

TEST_CASE("estimate_projections") {
    const auto g = make_grid(2, 8);
    const auto m = grid_measure(g, 1.5, {0, 0});
    const auto x = sample_multivariate(m, 3000, 21);
    const auto e = estimate_projections(x, g, AlphaMode::marginals);
    CHECK(e.pooled_alpha == doctest::Approx((fit_univariate(x.column(0)).alpha + fit_univariate(x.column(1)).alpha) / 2));
    const auto ep = estimate_projections(x, g, AlphaMode::projections);
    double mean_raw = 0;
    for (const auto& f : ep.fits) mean_raw += f.alpha_raw / 8;
    CHECK(ep.pooled_alpha == doctest::Approx(mean_raw));
    CHECK(std::abs(e.pooled_alpha - 1.5) < 0.05);
    CHECK(std::abs(ep.pooled_alpha - 1.5) < 0.05);
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(e.fits[j].gamma == doctest::Approx(e.fits[j + 4].gamma).epsilon(1e-9));
        CHECK(std::abs(e.fits[j].beta + e.fits[j + 4].beta) < 1e-9);
    }

    auto bad = x;
    bad.values.setZero();
    CHECK_THROWS_AS((void)estimate_projections(bad, g, AlphaMode::projections), EstimationError);
}

TEST_CASE("fit_spectral round trip and invariants") {
    const auto g = make_grid(2, 8);
    const auto m = grid_measure(g, 1.5, {0.4, -0.2});
    const auto x = sample_multivariate(m, 5000, 31);
    const auto rep = fit_spectral(x, 8);
    CHECK(std::abs(rep.pooled_alpha - 1.5) < 0.05);
    double worst = 0;
    for (const auto& t : g.points())
        worst = std::max(worst, std::abs(projection_params(rep.measure, t).gamma / projection_params(m, t).gamma - 1));
    CHECK(worst < 0.10);
    CHECK(rep.residual_norm >= 0.0);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(rep.measure.atoms()[j].s == g.point(j));
        CHECK(rep.measure.atoms()[j].lambda >= 0.0);
    }
    // Fitted characteristic function against the empirical one.
    for (const auto& t : g.points()) {
        std::complex<double> e = 0;
        for (Eigen::Index i = 0; i < x.values.rows(); ++i) e += std::exp(std::complex<double>(0, t[0] * x.values(i, 0) + t[1] * x.values(i, 1)));
        e /= static_cast<double>(x.rows());
        CHECK(std::abs(charfun_mv(rep.measure, t) - e) <= 5 / std::sqrt(5000.0));
    }
    // Scaling by 2 is exact in floating point: quantile alphas are unchanged.
    auto scaled = x;
    scaled.values *= 2.0;
    const auto es = estimate_projections(scaled, g, AlphaMode::projections);
    const auto e1 = estimate_projections(x, g, AlphaMode::projections);
    for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(es.fits[j].alpha_raw == e1.fits[j].alpha_raw);
        CHECK(es.fits[j].gamma == doctest::Approx(2 * e1.fits[j].gamma).epsilon(1e-12));
    }
}

TEST_CASE("fit_spectral independent components") {
    const DiscreteSpectralMeasure indep(1.5, {0, 0}, {{{1, 0}, 1}, {{0, 1}, 1}, {{-1, 0}, 1}, {{0, -1}, 1}});
    const auto x = sample_multivariate(indep, 5000, 41);
    const auto rep = fit_spectral(x, 16);
    double total = 0, near_axes = 0;
    for (const auto& a : rep.measure.atoms()) {
        total += a.lambda;
        const double angle = std::atan2(a.s[1], a.s[0]);
        const double to_axis = std::abs(std::remainder(angle, pi / 2));
        if (to_axis <= 2 * pi / 16 + 1e-9) near_axes += a.lambda;
    }
    CHECK(near_axes / total >= 0.8);
}

TEST_CASE("fit_spectral errors") {
    const auto g = make_grid(2, 8);
    const auto x = sample_multivariate(grid_measure(g, 1.5, {0, 0}), 150, 1);
    CHECK_THROWS_AS((void)fit_spectral(x, 8), EstimationError);
    const auto y = sample_multivariate(grid_measure(g, 1.5, {0, 0}), 300, 1);
    CHECK_THROWS_AS((void)fit_spectral(y, 7), ConfigError);
    CHECK_THROWS_AS((void)fit_spectral(ReturnMatrix::from_values(y.values.leftCols(1)), 8), ParameterError);
}

TEST_CASE("fit_spectral in three dimensions") {
    const auto g = make_grid(3, 8);
    const auto m = grid_measure(g, 1.5, {0, 0, 0});
    const auto x = sample_multivariate(m, 1000, 51);
    const auto rep = fit_spectral(x, 8);
    CHECK(rep.measure.atoms().size() == 24);
    CHECK(rep.per_projection.size() == 24);
}
