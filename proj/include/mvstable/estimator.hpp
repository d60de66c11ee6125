#pragma once

#include "mvstable/data.hpp"
#include "mvstable/spectral.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace mvstable {

/// Unit vectors used both as projection directions and as atom sites.
/// d = 2: t_j = (cos 2 pi j/n, sin 2 pi j/n), j = 0..n-1.
/// d > 2: one circle per coordinate pair (l, k), l < k, in lexicographic
/// order, each with n points (cos(2 pi j/n + pi/n), sin(...)) placed in
/// coordinates l and k. Within a circle, point j + n/2 is -t_j.
class ProjectionGrid {
public:
    /// Throws ConfigError unless d >= 2, n even and n >= 4.
    ProjectionGrid(std::size_t d, std::size_t n);

    [[nodiscard]] std::size_t dim() const { return d_; }
    [[nodiscard]] std::size_t per_circle() const { return n_; }
    [[nodiscard]] std::size_t circles() const { return pairs_.size(); }
    [[nodiscard]] std::size_t size() const { return points_.size(); }
    [[nodiscard]] const std::vector<std::vector<double>>& points() const { return points_; }
    [[nodiscard]] const std::vector<double>& point(std::size_t j) const { return points_.at(j); }
    /// Coordinate pair spanned by circle c.
    [[nodiscard]] std::pair<std::size_t, std::size_t> pair(std::size_t c) const { return pairs_.at(c); }

private:
    std::size_t d_;
    std::size_t n_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    std::vector<std::vector<double>> points_;
};

[[nodiscard]] ProjectionGrid make_grid(std::size_t d, std::size_t n);

enum class AlphaMode {
    marginals,    ///< mean of the ML alpha of each coordinate
    projections,  ///< mean of the quantile-method alpha over all grid directions
};

/// Which atoms enter the equations of a grid direction when d > 2.
enum class Coupling {
    block,  ///< only the atoms on the direction's own circle (block-diagonal system)
    full,   ///< every atom of the grid
};

/// Quantile fit of one projected sample.
struct ProjectionFit {
    std::vector<double> t;
    double alpha_raw = 0.0;  ///< unconditional quantile-method alpha
    double beta = 0.0;       ///< at the pooled alpha
    double gamma = 0.0;      ///< at the pooled alpha
    double delta = 0.0;      ///< S0 location at the pooled alpha
};

struct ProjectionEstimates {
    double pooled_alpha = 0.0;
    std::vector<ProjectionFit> fits;
};

/// Fits every projection <t_j, X_i> of (already centered) data. Throws
/// EstimationError naming t_j for a degenerate projection, and when the
/// pooled alpha is within 1e-3 of 2.
[[nodiscard]] ProjectionEstimates estimate_projections(const ReturnMatrix& data, const ProjectionGrid& grid,
                                                       AlphaMode mode = AlphaMode::marginals);

/// I(t_j) from a projection fit at the pooled alpha.
[[nodiscard]] std::complex<double> I_from_fit(double alpha, const ProjectionFit& fit);

struct LinearSystem {
    Eigen::MatrixXd A;
    Eigen::VectorXd c;
};

/// Real N x N system for the weights at the grid sites. Per circle, the
/// first n/2 rows hold Re psi(t_i's_j) with c_i = Re (I_i + I_{i+n/2})/2 and
/// the next n/2 rows hold Im psi(t_i's_j) with c = Im (I_i - I_{i+n/2})/2.
/// Throws NumericalError when A is singular.
[[nodiscard]] LinearSystem build_system(const ProjectionGrid& grid, double alpha,
                                        const std::vector<std::complex<double>>& I_values,
                                        Coupling coupling = Coupling::block);

/// Lawson-Hanson active-set solution of min ||c - A x|| subject to x >= 0.
/// Ties in the entering variable go to the lowest index. Throws
/// NumericalError after 10 N iterations without convergence.
[[nodiscard]] Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& c);

struct SpectralFitOptions {
    AlphaMode alpha_mode = AlphaMode::marginals;
    /// The block system recovers d = 3 measures poorly; for d = 2 both agree.
    Coupling coupling = Coupling::full;
};

struct EstimationReport {
    DiscreteSpectralMeasure measure;
    double pooled_alpha = 0.0;
    std::vector<ProjectionFit> per_projection;
    double residual_norm = 0.0;
    /// Quantile-method S0 locations of the coordinates (subtracted in step 1).
    std::vector<double> delta_hat;
};

/// Full pipeline: center by quantile locations, fit projections on the
/// grid, solve for the weights. Needs d >= 2 and at least 200 rows (warns
/// below 500).
[[nodiscard]] EstimationReport fit_spectral(const ReturnMatrix& data, std::size_t n,
                                            const SpectralFitOptions& options = {});

}  // namespace mvstable
