#include "mvstable/estimator.hpp"

#include "mvstable/error.hpp"
#include "mvstable/univariate.hpp"
#include "mvstable/warnings.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace mvstable {
namespace {

std::string describe(const std::vector<double>& t) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? ", " : "") << t[i];
    os << ')';
    return os.str();
}

std::vector<double> project(const ReturnMatrix& data, const std::vector<double>& t) {
    const Eigen::Map<const Eigen::VectorXd> tv(t.data(), static_cast<Eigen::Index>(t.size()));
    const Eigen::VectorXd p = data.values * tv;
    return {p.data(), p.data() + p.size()};
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

ProjectionGrid::ProjectionGrid(std::size_t d, std::size_t n) : d_(d), n_(n) {
    if (d < 2) throw ConfigError("grid dimension must be at least 2");
    if (n < 4 || n % 2 != 0) throw ConfigError("points per circle must be even and at least 4, got " + std::to_string(n));
    const double offset = d == 2 ? 0.0 : std::numbers::pi / static_cast<double>(n);
    for (std::size_t l = 0; l < d; ++l)
        for (std::size_t k = l + 1; k < d; ++k) pairs_.emplace_back(l, k);
    for (const auto& [l, k] : pairs_) {
        for (std::size_t j = 0; j < n; ++j) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n) + offset;
            std::vector<double> t(d, 0.0);
            t[l] = std::cos(angle);
            t[k] = std::sin(angle);
            points_.push_back(std::move(t));
        }
    }
    // cos/sin of angle + pi are not bit-exact negations; enforce the
    // antipodal pairing the system transform relies on.
    for (std::size_t c = 0; c < pairs_.size(); ++c)
        for (std::size_t j = 0; j < n / 2; ++j)
            for (std::size_t i = 0; i < d; ++i) points_[c * n + j + n / 2][i] = -points_[c * n + j][i];
}

ProjectionGrid make_grid(std::size_t d, std::size_t n) { return {d, n}; }

ProjectionEstimates estimate_projections(const ReturnMatrix& data, const ProjectionGrid& grid, AlphaMode mode) {
    if (data.cols() != grid.dim())
        throw ParameterError("data has " + std::to_string(data.cols()) + " columns, grid dimension is " +
                             std::to_string(grid.dim()));
    std::vector<std::vector<double>> samples;
    ProjectionEstimates out;
    double alpha_sum = 0.0;
    for (const auto& t : grid.points()) {
        samples.push_back(project(data, t));
        ProjectionFit f;
        f.t = t;
        try {
            f.alpha_raw = fit_quantile(samples.back()).alpha;
        } catch (const EstimationError& e) {
            throw EstimationError("projection t = " + describe(t) + ": " + e.what());
        }
        alpha_sum += f.alpha_raw;
        out.fits.push_back(std::move(f));
    }
    if (mode == AlphaMode::projections) {
        out.pooled_alpha = alpha_sum / static_cast<double>(grid.size());
    } else {
        double s = 0.0;
        for (std::size_t k = 0; k < data.cols(); ++k) {
            try {
                s += fit_univariate(data.column(k)).alpha;
            } catch (const EstimationError& e) {
                throw EstimationError("marginal " + std::to_string(k + 1) + ": " + e.what());
            }
        }
        out.pooled_alpha = s / static_cast<double>(data.cols());
    }
    if (out.pooled_alpha > 2.0 - 1e-3)
        throw EstimationError("pooled alpha " + std::to_string(out.pooled_alpha) +
                              " is within 1e-3 of 2; skewness is not identifiable and the system degenerates");
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const UnivariateStableParams p = fit_quantile_given_alpha(samples[j], out.pooled_alpha);
        out.fits[j].beta = p.beta;
        out.fits[j].gamma = p.gamma;
        out.fits[j].delta = p.delta;
    }
    return out;
}

std::complex<double> I_from_fit(double alpha, const ProjectionFit& fit) {
    ProjectionParams p;
    p.gamma = fit.gamma;
    p.beta = fit.beta;
    // S0 -> S1; only the alpha = 1 branch of the exponent uses the location.
    p.delta = fit.delta - (s1_to_s0_location(alpha, fit.beta, fit.gamma, 0.0));
    return projection_exponent(alpha, p);
}

LinearSystem build_system(const ProjectionGrid& grid, double alpha, const std::vector<std::complex<double>>& I_values,
                          Coupling coupling) {
    const std::size_t N = grid.size();
    const std::size_t n = grid.per_circle();
    const std::size_t half = n / 2;
    if (I_values.size() != N) throw ParameterError("need one I value per grid point");
    LinearSystem sys{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N)),
                     Eigen::VectorXd::Zero(static_cast<Eigen::Index>(N))};
    for (std::size_t c = 0; c < grid.circles(); ++c) {
        const std::size_t base = c * n;
        const std::size_t col_begin = coupling == Coupling::block ? base : 0;
        const std::size_t col_end = coupling == Coupling::block ? base + n : N;
        for (std::size_t i = 0; i < half; ++i) {
            const std::size_t p = base + i;
            const auto re_row = static_cast<Eigen::Index>(base + i);
            const auto im_row = static_cast<Eigen::Index>(base + half + i);
            for (std::size_t j = col_begin; j < col_end; ++j) {
                const std::complex<double> v = psi(dot(grid.point(p), grid.point(j)), alpha);
                sys.A(re_row, static_cast<Eigen::Index>(j)) = v.real();
                sys.A(im_row, static_cast<Eigen::Index>(j)) = v.imag();
            }
            sys.c(re_row) = (0.5 * (I_values[p] + I_values[p + half])).real();
            sys.c(im_row) = (0.5 * (I_values[p] - I_values[p + half])).imag();
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sys.A);
    qr.setThreshold(1e-12);
    if (qr.rank() < static_cast<Eigen::Index>(N))
        throw NumericalError("system matrix is singular (rank " + std::to_string(qr.rank()) + " of " +
                             std::to_string(N) + ") at alpha = " + std::to_string(alpha));
    return sys;
}

EstimationReport fit_spectral(const ReturnMatrix& data, std::size_t n, const SpectralFitOptions& options) {
    const std::size_t d = data.cols();
    const std::size_t m = data.rows();
    if (d < 2) throw ParameterError("spectral fit needs at least two columns");
    if (m < 200) throw EstimationError("spectral fit needs at least 200 rows, got " + std::to_string(m));
    if (m < 500) warn("spectral fit on " + std::to_string(m) + " rows; at least 500 are recommended");
    const ProjectionGrid grid(d, n);

    std::vector<double> delta_hat(d);
    ReturnMatrix centered = data;
    for (std::size_t k = 0; k < d; ++k) {
        delta_hat[k] = fit_quantile(data.column(k)).delta;
        centered.values.col(static_cast<Eigen::Index>(k)).array() -= delta_hat[k];
    }

    ProjectionEstimates est = estimate_projections(centered, grid, options.alpha_mode);
    std::vector<std::complex<double>> I(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) I[j] = I_from_fit(est.pooled_alpha, est.fits[j]);
    const LinearSystem sys = build_system(grid, est.pooled_alpha, I, options.coupling);
    const Eigen::VectorXd lambda = nnls(sys.A, sys.c);
    if (!(lambda.maxCoeff() > 0.0)) throw EstimationError("all fitted spectral weights are zero");

    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < grid.size(); ++j) atoms.push_back({grid.point(j), lambda(static_cast<Eigen::Index>(j))});
    // The measure location is chosen so each fitted marginal has the
    // quantile-method S0 location of its coordinate.
    const DiscreteSpectralMeasure centered_measure(est.pooled_alpha, std::vector<double>(d, 0.0), atoms);
    std::vector<double> location(d);
    for (std::size_t k = 0; k < d; ++k) location[k] = delta_hat[k] - marginal_params(centered_measure, k).delta;

    EstimationReport report{DiscreteSpectralMeasure(est.pooled_alpha, location, std::move(atoms)), est.pooled_alpha,
                            std::move(est.fits), (sys.c - sys.A * lambda).norm(), delta_hat};
    return report;
}

}  // namespace mvstable
