#include "mvstable/risk.hpp"

#include "mvstable/error.hpp"
#include "mvstable/random.hpp"
#include "mvstable/sample_stats.hpp"
#include "mvstable/sampler.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace mvstable {
namespace {

constexpr std::size_t kMinExceedances = 20;
constexpr std::size_t kMinTailPoints = 20;
constexpr std::size_t kNormalDraws = 1'000'000;

void check_prob(double q, const char* what) {
    if (!(q > 0.0 && q < 1.0)) throw ParameterError(std::string(what) + ": q must lie in (0, 1)");
}

/// Profile log-likelihood of the GPD in theta = xi / sigma, with xi and sigma
/// at their conditional maxima. Also reports them.
struct GpdProfile {
    std::span<const double> y;

    double operator()(double theta, double* xi_out = nullptr, double* sigma_out = nullptr) const {
        const auto n = static_cast<double>(y.size());
        double xi = 0.0, sigma = 0.0;
        for (double v : y) {
            const double x = theta * v;
            xi += std::log1p(x);
            // log1p(x)/theta without cancellation near theta = 0.
            sigma += std::abs(x) < 1e-8 ? v * (1.0 - 0.5 * x) : v * std::log1p(x) / x;
        }
        xi /= n;
        sigma /= n;
        if (xi_out) *xi_out = xi;
        if (sigma_out) *sigma_out = sigma;
        if (!(xi > -1.0) || !(sigma > 0.0)) return -std::numeric_limits<double>::infinity();
        return -n * std::log(sigma) - n * (1.0 + xi);
    }
};

/// Sorts row indices of a column by value, ties by row; returns each row's rank (0-based).
std::vector<std::size_t> ranks(const Eigen::MatrixXd& x, Eigen::Index col) {
    const auto n = static_cast<std::size_t>(x.rows());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x(static_cast<Eigen::Index>(a), col) < x(static_cast<Eigen::Index>(b), col);
    });
    std::vector<std::size_t> r(n);
    for (std::size_t i = 0; i < n; ++i) r[order[i]] = i;
    return r;
}

void check_coords(std::size_t d, std::span<const double> thresholds, std::span<const std::size_t> cond,
                  std::size_t target) {
    if (thresholds.size() != d)
        throw ParameterError("need " + std::to_string(d) + " thresholds, got " + std::to_string(thresholds.size()));
    if (cond.empty()) throw ParameterError("conditioning set is empty");
    if (target >= d) throw ParameterError("target coordinate out of range");
    for (std::size_t c : cond) {
        if (c >= d) throw ParameterError("conditioning coordinate out of range");
        if (c == target) throw ParameterError("target coordinate is also a conditioning coordinate");
    }
}

ConditionalProbability count_conditional(const Eigen::MatrixXd& x, std::span<const double> thresholds,
                                         std::span<const std::size_t> cond, std::size_t target) {
    std::size_t in_cond = 0, joint = 0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        bool ok = true;
        for (std::size_t c : cond) ok = ok && x(i, static_cast<Eigen::Index>(c)) < thresholds[c];
        if (!ok) continue;
        ++in_cond;
        joint += x(i, static_cast<Eigen::Index>(target)) < thresholds[target];
    }
    if (in_cond == 0)
        throw EstimationError("conditioning event is empty in " + std::to_string(x.rows()) +
                              " draws; the conditional probability is undefined");
    const double p = static_cast<double>(joint) / static_cast<double>(in_cond);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(in_cond)), in_cond};
}

TailDependence tail_dependence_of(const Eigen::MatrixXd& x, double q, std::size_t l, std::size_t k) {
    check_prob(q, "tail_dependence");
    if (l >= static_cast<std::size_t>(x.cols()) || k >= static_cast<std::size_t>(x.cols()) || l == k)
        throw ParameterError("tail_dependence needs two distinct columns");
    const auto n = static_cast<std::size_t>(x.rows());
    const double tau = std::min(q, 1.0 - q);
    const auto K = static_cast<std::size_t>(std::floor(tau * static_cast<double>(n)));
    if (K == 0) throw EstimationError("tail_dependence: no observations in a tail of share " + std::to_string(tau));
    const auto rx = ranks(x, static_cast<Eigen::Index>(l));
    const auto ry = ranks(x, static_cast<Eigen::Index>(k));
    std::size_t lower = 0, upper = 0;
    for (std::size_t i = 0; i < n; ++i) {
        lower += rx[i] < K && ry[i] < K;
        upper += rx[i] >= n - K && ry[i] >= n - K;
    }
    TailDependence out;
    out.q = q;
    out.theta_l = static_cast<double>(lower) / static_cast<double>(K);
    out.theta_u = static_cast<double>(upper) / static_cast<double>(K);
    out.tail_count = K;
    out.sparse = K < kMinTailPoints;
    return out;
}

}  // namespace

std::string_view to_string(VarMethod m) {
    switch (m) {
        case VarMethod::empirical: return "empirical";
        case VarMethod::gpd: return "gpd";
        case VarMethod::stable: return "stable";
    }
    return "unknown";
}

std::vector<double> losses_from_returns(std::span<const double> returns) {
    std::vector<double> out(returns.size());
    std::transform(returns.begin(), returns.end(), out.begin(), [](double r) { return -r; });
    return out;
}

VarEstimate var_empirical(std::span<const double> losses, double q) {
    if (losses.empty()) throw ParameterError("var_empirical: empty sample");
    if (!(q > 0.0 && q <= 1.0)) throw ParameterError("var_empirical: q must lie in (0, 1]");
    return {VarMethod::empirical, q, sample_quantile(losses, q)};
}

GpdParams fit_gpd(std::span<const double> losses, double threshold_q) {
    check_prob(threshold_q, "fit_gpd");
    if (losses.empty()) throw ParameterError("fit_gpd: empty sample");
    const double u = sample_quantile(losses, threshold_q);
    std::vector<double> y;
    for (double x : losses)
        if (x > u) y.push_back(x - u);
    if (y.size() < kMinExceedances)
        throw EstimationError("fit_gpd: " + std::to_string(y.size()) + " exceedances above the threshold, at least " +
                              std::to_string(kMinExceedances) + " are needed");
    const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
    if (*ymax - *ymin <= 1e-12 * *ymax) throw EstimationError("fit_gpd: exceedances are all equal");

    // theta = (exp(v) - 1) / ymax covers (-1/ymax, inf); coarse grid, then Brent.
    const GpdProfile profile{y};
    const double scale = *ymax;
    auto objective = [&](double v) { return -profile(std::expm1(v) / scale); };
    constexpr int kGrid = 300;
    constexpr double kLo = -12.0, kHi = 12.0;
    const double h = (kHi - kLo) / kGrid;
    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kGrid; ++i) {
        const double val = objective(kLo + i * h);
        if (val < best_val) {
            best_val = val;
            best = i;
        }
    }
    if (!std::isfinite(best_val)) throw EstimationError("fit_gpd: likelihood is not finite anywhere");
    const double a = kLo + std::max(best - 1, 0) * h;
    const double b = kLo + std::min(best + 1, kGrid) * h;
    std::uintmax_t iters = 200;
    const auto r = boost::math::tools::brent_find_minima(objective, a, b, 40, iters);
    const double v = r.second <= best_val ? r.first : kLo + best * h;

    GpdParams g;
    profile(std::expm1(v) / scale, &g.xi, &g.sigma);
    g.u = u;
    g.zeta_u = static_cast<double>(y.size()) / static_cast<double>(losses.size());
    return g;
}

VarEstimate var_gpd(const GpdParams& g, double q) {
    check_prob(q, "var_gpd");
    if (!(g.sigma > 0.0) || !(g.zeta_u > 0.0 && g.zeta_u < 1.0))
        throw ParameterError("var_gpd: need sigma > 0 and zeta_u in (0, 1)");
    if (q <= 1.0 - g.zeta_u)
        throw ParameterError("var_gpd: q = " + std::to_string(q) + " is not above 1 - zeta_u = " +
                             std::to_string(1.0 - g.zeta_u));
    const double L = std::log((1.0 - q) / g.zeta_u);
    const double excess = g.xi == 0.0 ? -g.sigma * L : g.sigma * std::expm1(-g.xi * L) / g.xi;
    return {VarMethod::gpd, q, g.u + excess};
}

VarEstimate var_stable(const UnivariateStableParams& p, double q) {
    check_prob(q, "var_stable");
    return {VarMethod::stable, q, -quantile(p, 1.0 - q)};
}

ConditionalProbability cond_tail_prob(const DiscreteSpectralMeasure& m, std::span<const double> thresholds,
                                      std::span<const std::size_t> cond, std::size_t target, std::size_t n_mc,
                                      std::uint64_t seed) {
    check_coords(m.dim(), thresholds, cond, target);
    if (n_mc < 100'000) throw ParameterError("cond_tail_prob needs at least 1e5 Monte Carlo draws");
    return count_conditional(sample_multivariate(m, n_mc, seed).values, thresholds, cond, target);
}

double bivariate_normal_cdf(double h, double k, double rho) {
    if (!(std::abs(rho) < 1.0)) throw ParameterError("bivariate_normal_cdf: |rho| must be below 1");
    const boost::math::normal_distribution<double> N;
    const double s = std::sqrt(1.0 - rho * rho);
    // Integrate phi(x) Phi((k - rho x)/s) over x < h; the integrand is
    // negligible below -38.
    constexpr double kLow = -38.0;
    if (h <= kLow) return 0.0;
    auto f = [&](double x) { return boost::math::pdf(N, x) * boost::math::cdf(N, (k - rho * x) / s); };
    // Split at the kink of the inner cdf to keep the panels smooth.
    double total = 0.0;
    double a = kLow;
    if (rho != 0.0) {
        const double mid = k / rho;
        if (mid > kLow && mid < h) {
            total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, mid, 15, 1e-14);
            a = mid;
        }
    }
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, h, 15, 1e-14);
    return std::clamp(total, 0.0, 1.0);
}

ConditionalProbability cond_tail_prob_normal(const ReturnMatrix& data, std::span<const double> thresholds,
                                             std::span<const std::size_t> cond, std::size_t target,
                                             std::uint64_t seed) {
    const std::size_t d = data.cols();
    if (d < 2) throw ParameterError("cond_tail_prob_normal needs at least two columns");
    if (data.rows() < 3) throw EstimationError("cond_tail_prob_normal needs at least three rows");
    check_coords(d, thresholds, cond, target);

    std::vector<std::size_t> coords(cond.begin(), cond.end());
    coords.push_back(target);
    const auto k = static_cast<Eigen::Index>(coords.size());
    Eigen::VectorXd mu(k);
    Eigen::MatrixXd cov(k, k);
    const auto rows = static_cast<double>(data.rows());
    for (Eigen::Index a = 0; a < k; ++a) mu(a) = data.values.col(static_cast<Eigen::Index>(coords[a])).mean();
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) {
            const auto xa = data.values.col(static_cast<Eigen::Index>(coords[a])).array() - mu(a);
            const auto xb = data.values.col(static_cast<Eigen::Index>(coords[b])).array() - mu(b);
            cov(a, b) = (xa * xb).sum() / (rows - 1.0);
        }
    const Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
    if (!(sd.minCoeff() > 0.0)) throw EstimationError("cond_tail_prob_normal: a coordinate has zero variance");
    const Eigen::MatrixXd corr = sd.cwiseInverse().asDiagonal() * cov * sd.cwiseInverse().asDiagonal();
    if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(corr).eigenvalues().minCoeff() < 1e-10)
        throw EstimationError("cond_tail_prob_normal: fitted covariance is singular");

    Eigen::VectorXd z(k);
    for (Eigen::Index a = 0; a < k; ++a) z(a) = (thresholds[coords[a]] - mu(a)) / sd(a);

    if (cond.size() == 1) {
        const boost::math::normal_distribution<double> N;
        const double pc = boost::math::cdf(N, z(0));
        if (!(pc > 0.0)) throw EstimationError("cond_tail_prob_normal: conditioning event has probability 0");
        return {std::clamp(bivariate_normal_cdf(z(0), z(1), corr(0, 1)) / pc, 0.0, 1.0), 0.0, 0};
    }

    const Eigen::MatrixXd L = Eigen::LLT<Eigen::MatrixXd>(corr).matrixL();
    Rng rng(seed);
    Eigen::MatrixXd draws(static_cast<Eigen::Index>(kNormalDraws), k);
    Eigen::VectorXd e(k);
    for (Eigen::Index i = 0; i < draws.rows(); ++i) {
        for (Eigen::Index a = 0; a < k; ++a) e(a) = rng.normal();
        draws.row(i) = (L * e).transpose();
    }
    // Standardized coordinates: conditioning coords first, target last.
    std::vector<double> zt(z.data(), z.data() + k);
    std::vector<std::size_t> c_idx(cond.size());
    std::iota(c_idx.begin(), c_idx.end(), 0);
    return count_conditional(draws, zt, c_idx, cond.size());
}

TailDependence tail_dependence(const ReturnMatrix& data, double q, std::size_t l, std::size_t k) {
    return tail_dependence_of(data.values, q, l, k);
}

TailDependence tail_dependence(const DiscreteSpectralMeasure& m, double q, std::size_t n_mc, std::uint64_t seed,
                               std::size_t l, std::size_t k) {
    return tail_dependence_of(sample_multivariate(m, n_mc, seed).values, q, l, k);
}

double gain_loss_ratio(std::span<const double> returns, double q) {
    if (returns.empty()) throw ParameterError("gain_loss_ratio: empty sample");
    if (!(q > 0.5 && q < 1.0)) throw ParameterError("gain_loss_ratio: q must lie in (0.5, 1)");
    const auto s = sorted_copy(returns);
    const double low = sorted_quantile(s, 1.0 - q);
    if (low == 0.0) throw EstimationError("gain_loss_ratio: the lower quantile is zero");
    return sorted_quantile(s, q) / std::abs(low);
}

}  // namespace mvstable
