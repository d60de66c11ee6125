#include "mvstable/gof.hpp"

#include "mvstable/error.hpp"
#include "mvstable/random.hpp"
#include "mvstable/sample_stats.hpp"
#include "mvstable/sampler.hpp"
#include "mvstable/warnings.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mvstable {
namespace {

constexpr double kMaxFailedShare = 0.10;

/// Collects bootstrap statistics, dropping replicates whose estimation
/// failed, and turns them into a report.
class Bootstrap {
public:
    Bootstrap(std::size_t B, std::uint64_t seed, double level, std::string name)
        : B_(B), seed_(seed), level_(level), name_(std::move(name)) {
        if (B < 100) throw ParameterError(name_ + ": at least 100 bootstrap replicates are required");
        if (!(level > 0.0 && level < 1.0)) throw ParameterError(name_ + ": level must lie in (0, 1)");
    }

    template <class F>
    TestReport run(double statistic, F&& replicate) {
        std::vector<double> stats;
        std::size_t failed = 0;
        for (std::size_t r = 0; r < B_; ++r) {
            try {
                stats.push_back(replicate(seed_ + r + 1));
            } catch (const Error&) {
                ++failed;
            }
        }
        if (static_cast<double>(failed) > kMaxFailedShare * static_cast<double>(B_))
            throw EstimationError(name_ + ": " + std::to_string(failed) + " of " + std::to_string(B_) +
                                  " bootstrap replicates failed to estimate");
        if (failed > 0) warn(name_ + ": dropped " + std::to_string(failed) + " failed bootstrap replicates");
        TestReport rep;
        rep.statistic = statistic;
        rep.critical_value = sample_quantile(stats, level_);
        rep.replicates = stats.size();
        rep.failed = failed;
        rep.level = level_;
        rep.reject = statistic > rep.critical_value;
        rep.seed = seed_;
        return rep;
    }

private:
    std::size_t B_;
    std::uint64_t seed_;
    double level_;
    std::string name_;
};

/// Adds noise of relative size 1e-9 to columns that contain ties.
ReturnMatrix break_ties(const ReturnMatrix& data, std::uint64_t seed) {
    ReturnMatrix out = data;
    Rng rng(derive_seed(seed, 0x7135));
    for (Eigen::Index k = 0; k < out.values.cols(); ++k) {
        std::vector<double> col(out.values.col(k).data(), out.values.col(k).data() + out.values.rows());
        std::sort(col.begin(), col.end());
        if (std::adjacent_find(col.begin(), col.end()) == col.end()) continue;
        const double scale = 1e-9 * std::max(1.0, std::max(std::abs(col.front()), std::abs(col.back())));
        for (Eigen::Index i = 0; i < out.values.rows(); ++i) out.values(i, k) += scale * (rng.uniform() - 0.5);
    }
    return out;
}

/// Fenwick tree over ranks for the bivariate dominance counts.
std::vector<double> kendall_2d(const Eigen::MatrixXd& x) {
    const auto n = static_cast<std::size_t>(x.rows());
    std::vector<std::size_t> by_y(n);
    std::iota(by_y.begin(), by_y.end(), 0);
    std::sort(by_y.begin(), by_y.end(), [&](std::size_t a, std::size_t b) {
        return x(static_cast<Eigen::Index>(a), 1) < x(static_cast<Eigen::Index>(b), 1);
    });
    // Dense ranks in y, equal values share a rank.
    std::vector<std::size_t> y_rank(n);
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && x(static_cast<Eigen::Index>(by_y[i]), 1) > x(static_cast<Eigen::Index>(by_y[i - 1]), 1)) ++r;
        y_rank[by_y[i]] = r + 1;
    }
    std::vector<std::size_t> by_x(n);
    std::iota(by_x.begin(), by_x.end(), 0);
    std::sort(by_x.begin(), by_x.end(), [&](std::size_t a, std::size_t b) {
        return x(static_cast<Eigen::Index>(a), 0) < x(static_cast<Eigen::Index>(b), 0);
    });
    std::vector<std::size_t> tree(n + 2, 0);
    auto add = [&](std::size_t i) {
        for (; i < tree.size(); i += i & (~i + 1)) ++tree[i];
    };
    auto prefix = [&](std::size_t i) {
        std::size_t s = 0;
        for (; i > 0; i -= i & (~i + 1)) s += tree[i];
        return s;
    };
    std::vector<double> m(n);
    std::size_t i = 0;
    while (i < n) {
        // Points with equal x do not dominate each other: query the whole
        // group before inserting it.
        std::size_t j = i;
        while (j < n && x(static_cast<Eigen::Index>(by_x[j]), 0) == x(static_cast<Eigen::Index>(by_x[i]), 0)) ++j;
        for (std::size_t k = i; k < j; ++k) m[by_x[k]] = static_cast<double>(prefix(y_rank[by_x[k]] - 1)) / static_cast<double>(n);
        for (std::size_t k = i; k < j; ++k) add(y_rank[by_x[k]]);
        i = j;
    }
    return m;
}

std::vector<double> kendall_3d(const Eigen::MatrixXd& x) {
    const Eigen::Index n = x.rows();
    std::vector<double> m(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = x(i, 0), b = x(i, 1), c = x(i, 2);
        std::size_t count = 0;
        for (Eigen::Index j = 0; j < n; ++j) count += (x(j, 0) < a) & (x(j, 1) < b) & (x(j, 2) < c);
        m[static_cast<std::size_t>(i)] = static_cast<double>(count) / static_cast<double>(n);
    }
    return m;
}

std::vector<double> sorted_kendall(const ReturnMatrix& data) {
    auto m = kendall_empirical(data);
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace

double ad_statistic_uniform(std::span<const double> u) {
    if (u.empty()) throw ParameterError("AD statistic of an empty sample");
    auto f = sorted_copy(u);
    const std::size_t n = f.size();
    for (double& v : f) v = std::clamp(v, 1e-15, 1.0 - 1e-15);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += static_cast<double>(2 * i + 1) * (std::log(f[i]) + std::log1p(-f[n - 1 - i]));
    return -static_cast<double>(n) - s / static_cast<double>(n);
}

double ad_statistic(std::span<const double> sample, const UnivariateStableParams& p) {
    if (sample.empty()) throw ParameterError("AD statistic of an empty sample");
    return ad_statistic_uniform(cdf_many(p, sample));
}

TestReport ad_test(std::span<const double> sample, std::size_t B, std::uint64_t seed, double level) {
    Bootstrap boot(B, seed, level, "ad_test");
    const UnivariateStableParams fit = fit_univariate(sample);
    const double stat = ad_statistic(sample, fit);
    return boot.run(stat, [&](std::uint64_t sub) {
        const auto x = sample_univariate(fit, sample.size(), sub);
        return ad_statistic(x, fit_univariate(x));
    });
}

std::vector<double> kendall_empirical(const ReturnMatrix& data) {
    if (data.cols() == 2) return kendall_2d(data.values);
    if (data.cols() == 3) return kendall_3d(data.values);
    throw UnsupportedError("Kendall function is implemented for d = 2 and d = 3 only");
}

double kendall_function(std::span<const double> sorted_m, double t) {
    const auto it = std::upper_bound(sorted_m.begin(), sorted_m.end(), t);
    return static_cast<double>(it - sorted_m.begin()) / static_cast<double>(sorted_m.size());
}

double kendall_cvm_statistic(std::span<const double> m_data, std::span<const double> m_reference) {
    if (m_data.empty() || m_reference.empty()) throw ParameterError("Kendall statistic needs nonempty samples");
    const auto a = sorted_copy(m_data);
    const auto b = sorted_copy(m_reference);
    constexpr int kPoints = 512;
    const double h = 1.0 / (kPoints - 1);
    double integral = 0.0;
    for (int i = 0; i < kPoints; ++i) {
        const double t = i * h;
        const double diff = kendall_function(a, t) - kendall_function(b, t);
        integral += (i == 0 || i == kPoints - 1 ? 0.5 : 1.0) * diff * diff;
    }
    return static_cast<double>(m_data.size()) * integral * h;
}

TestReport kendall_cvm_test(const ReturnMatrix& data, std::size_t n_grid, std::size_t B, std::uint64_t seed,
                            const SpectralFitOptions& options, double level) {
    if (data.cols() != 2 && data.cols() != 3)
        throw UnsupportedError("Kendall test is implemented for d = 2 and d = 3 only");
    Bootstrap boot(B, seed, level, "kendall_cvm_test");
    const std::size_t m = data.rows();
    // A sample against the Kendall function of the measure fitted to it.
    auto statistic = [&](const ReturnMatrix& x, const EstimationReport& fit, std::uint64_t s) {
        const ReturnMatrix reference = sample_multivariate(fit.measure, 10 * m, derive_seed(s, 2));
        return kendall_cvm_statistic(sorted_kendall(break_ties(x, s)), sorted_kendall(reference));
    };
    const EstimationReport fit = fit_spectral(data, n_grid, options);
    const double stat = statistic(data, fit, seed);
    return boot.run(stat, [&](std::uint64_t sub) {
        const ReturnMatrix x = sample_multivariate(fit.measure, m, derive_seed(sub, 1));
        return statistic(x, fit_spectral(x, n_grid, options), sub);
    });
}

double alpha_spread(const ReturnMatrix& data) {
    if (data.cols() < 2) throw ParameterError("alpha equality needs at least two columns");
    std::vector<double> a;
    for (std::size_t k = 0; k < data.cols(); ++k) a.push_back(fit_univariate(data.column(k)).alpha);
    return *std::max_element(a.begin(), a.end()) - *std::min_element(a.begin(), a.end());
}

TestReport alpha_equality_test(const ReturnMatrix& data, std::size_t B, std::uint64_t seed, std::size_t n_grid,
                               double level) {
    Bootstrap boot(B, seed, level, "alpha_equality_test");
    const double stat = alpha_spread(data);
    const EstimationReport fit = fit_spectral(data, n_grid);
    return boot.run(stat, [&](std::uint64_t sub) {
        return alpha_spread(sample_multivariate(fit.measure, data.rows(), derive_seed(sub, 1)));
    });
}

}  // namespace mvstable
