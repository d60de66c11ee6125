#include "mvstable/sampler.hpp"

#include "mvstable/error.hpp"
#include "mvstable/random.hpp"
#include "stable_variates.hpp"

#include <cmath>

namespace mvstable {

ReturnMatrix sample_multivariate(const DiscreteSpectralMeasure& m, std::size_t n, std::uint64_t seed) {
    if (m.alpha() == 1.0)
        throw UnsupportedError("sampling at alpha = 1 is not supported; perturb alpha slightly (e.g. 1 +/- 1e-6)");
    if (n == 0) throw ParameterError("sample size must be positive");
    const std::size_t d = m.dim();
    const detail::CmsGenerator gen(m.alpha(), 1.0);

    std::vector<double> scale;
    std::vector<const Atom*> atoms;
    for (const Atom& a : m.atoms()) {
        if (a.lambda <= 0.0) continue;
        atoms.push_back(&a);
        scale.push_back(std::pow(a.lambda, 1.0 / m.alpha()));
    }

    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        for (std::size_t k = 0; k < d; ++k) x(row, static_cast<Eigen::Index>(k)) = m.delta()[k];
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            const double z = scale[a] * gen(rng);
            for (std::size_t k = 0; k < d; ++k) x(row, static_cast<Eigen::Index>(k)) += z * atoms[a]->s[k];
        }
    }
    return ReturnMatrix::from_values(std::move(x));
}

}  // namespace mvstable
