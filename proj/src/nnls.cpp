#include "mvstable/error.hpp"
#include "mvstable/estimator.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <string>
#include <vector>

namespace mvstable {
namespace {

/// Unconstrained least squares restricted to the passive columns.
Eigen::VectorXd solve_passive(const Eigen::MatrixXd& A, const Eigen::VectorXd& c, const std::vector<bool>& passive) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        if (passive[static_cast<std::size_t>(j)]) cols.push_back(j);
    Eigen::MatrixXd sub(A.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = A.col(cols[k]);
    const Eigen::VectorXd zs = sub.colPivHouseholderQr().solve(c);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(A.cols());
    for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = zs(static_cast<Eigen::Index>(k));
    return z;
}

}  // namespace

Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& c) {
    if (A.rows() != c.size()) throw ParameterError("nnls: matrix and vector sizes differ");
    if (!A.allFinite() || !c.allFinite()) throw ParameterError("nnls: non-finite input");
    const Eigen::Index N = A.cols();
    Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
    if (N == 0) return x;
    std::vector<bool> passive(static_cast<std::size_t>(N), false);
    // Variables whose entry was rejected because rounding made their own
    // component non-positive; cleared whenever x moves.
    std::vector<bool> blocked(static_cast<std::size_t>(N), false);

    const double scale = (A.transpose() * c).norm();
    const double tol = 1e-12 * std::max(scale, 1e-300);
    const long max_iter = 10 * static_cast<long>(N);
    long iter = 0;

    Eigen::VectorXd w = A.transpose() * (c - A * x);
    while (true) {
        // Entering variable: largest positive gradient among the active
        // set, lowest index on ties.
        Eigen::Index enter = -1;
        double best = tol;
        for (Eigen::Index j = 0; j < N; ++j)
            if (!passive[static_cast<std::size_t>(j)] && !blocked[static_cast<std::size_t>(j)] && w(j) > best) {
                best = w(j);
                enter = j;
            }
        if (enter < 0) break;
        passive[static_cast<std::size_t>(enter)] = true;

        bool first = true;
        while (true) {
            if (++iter > max_iter)
                throw NumericalError("nnls did not converge within " + std::to_string(max_iter) + " iterations");
            const Eigen::VectorXd z = solve_passive(A, c, passive);
            if (first && z(enter) <= 0.0) {
                passive[static_cast<std::size_t>(enter)] = false;
                blocked[static_cast<std::size_t>(enter)] = true;
                break;
            }
            first = false;
            bool feasible = true;
            for (Eigen::Index j = 0; j < N; ++j)
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) feasible = false;
            std::fill(blocked.begin(), blocked.end(), false);
            if (feasible) {
                x = z;
                break;
            }
            // Step from x toward z until the first passive variable hits 0.
            double step = 1.0;
            for (Eigen::Index j = 0; j < N; ++j)
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) step = std::min(step, x(j) / (x(j) - z(j)));
            x += step * (z - x);
            for (Eigen::Index j = 0; j < N; ++j)
                if (passive[static_cast<std::size_t>(j)] && x(j) <= 1e-15 * std::max(1.0, x.cwiseAbs().maxCoeff())) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x(j) = 0.0;
                }
        }
        w = A.transpose() * (c - A * x);
    }
    return x;
}

}  // namespace mvstable
