#include "mvstable/spectral.hpp"

#include "mvstable/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace mvstable {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_dim(const DiscreteSpectralMeasure& m, std::span<const double> t) {
    if (t.size() != m.dim())
        throw ParameterError("vector has dimension " + std::to_string(t.size()) + ", measure has " +
                             std::to_string(m.dim()));
}

}  // namespace

DiscreteSpectralMeasure::DiscreteSpectralMeasure(double alpha, std::vector<double> delta, std::vector<Atom> atoms)
    : alpha_(alpha), delta_(std::move(delta)), atoms_(std::move(atoms)) {
    if (!(alpha_ > 0.0 && alpha_ <= 2.0)) throw ParameterError("alpha must lie in (0, 2]");
    const std::size_t d = delta_.size();
    if (d < 2) throw ParameterError("spectral measure needs dimension >= 2");
    for (double v : delta_)
        if (!std::isfinite(v)) throw ParameterError("location vector must be finite");
    if (atoms_.empty()) throw ParameterError("spectral measure has no atoms");
    bool any_mass = false;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        const std::string tag = "atom " + std::to_string(i);
        if (a.s.size() != d) throw ParameterError(tag + ": site dimension does not match the location vector");
        if (std::abs(std::sqrt(dot(a.s, a.s)) - 1.0) > 1e-12) throw ParameterError(tag + ": site is not a unit vector");
        if (!(a.lambda >= 0.0) || !std::isfinite(a.lambda)) throw ParameterError(tag + ": weight must be >= 0");
        any_mass = any_mass || a.lambda > 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            double chord2 = 0.0;
            for (std::size_t c = 0; c < d; ++c) chord2 += (a.s[c] - atoms_[j].s[c]) * (a.s[c] - atoms_[j].s[c]);
            if (std::sqrt(chord2) <= 1e-9)
                throw ParameterError(tag + " duplicates the site of atom " + std::to_string(j));
        }
    }
    if (!any_mass) throw ParameterError("all spectral weights are zero");
}

std::complex<double> psi(double u, double alpha) {
    if (u == 0.0) return {0.0, 0.0};
    const double au = std::abs(u);
    const double sgn = u > 0.0 ? 1.0 : -1.0;
    if (alpha == 2.0) return {au * au, 0.0};
    if (alpha == 1.0) return {au, au * (2.0 / std::numbers::pi) * sgn * std::log(au)};
    const double p = std::pow(au, alpha);
    return {p, -p * std::tan(0.5 * std::numbers::pi * alpha) * sgn};
}

std::complex<double> charfun_mv(const DiscreteSpectralMeasure& m, std::span<const double> t) {
    check_dim(m, t);
    std::complex<double> e(0.0, dot(t, m.delta()));
    for (const Atom& a : m.atoms()) e -= psi(dot(t, a.s), m.alpha()) * a.lambda;
    return std::exp(e);
}

ProjectionParams projection_params(const DiscreteSpectralMeasure& m, std::span<const double> u) {
    check_dim(m, u);
    const double alpha = m.alpha();
    double scale = 0.0;
    double skew = 0.0;
    double log_term = 0.0;
    for (const Atom& a : m.atoms()) {
        const double v = dot(u, a.s);
        if (v == 0.0 || a.lambda == 0.0) continue;
        const double w = std::pow(std::abs(v), alpha) * a.lambda;
        scale += w;
        skew += v > 0.0 ? w : -w;
        if (alpha == 1.0) log_term += v * std::log(std::abs(v)) * a.lambda;
    }
    if (!(scale > 0.0)) throw EstimationError("degenerate projection: direction is orthogonal to every atom");
    ProjectionParams p;
    p.gamma = std::pow(scale, 1.0 / alpha);
    p.beta = std::clamp(skew / scale, -1.0, 1.0);
    p.delta = dot(u, m.delta());
    if (alpha == 1.0) p.delta -= (2.0 / std::numbers::pi) * log_term;
    return p;
}

std::complex<double> projection_exponent(double alpha, const ProjectionParams& p) {
    if (alpha == 1.0) return {p.gamma, -p.delta};
    return std::pow(p.gamma, alpha) * std::complex<double>(1.0, -p.beta * std::tan(0.5 * std::numbers::pi * alpha));
}

std::complex<double> I_of_t(const DiscreteSpectralMeasure& m, std::span<const double> t) {
    // Location removed first, so only the alpha = 1 log correction
    // survives in the S1 delta.
    const DiscreteSpectralMeasure centered(m.alpha(), std::vector<double>(m.dim(), 0.0), m.atoms());
    return projection_exponent(m.alpha(), projection_params(centered, t));
}

double s1_to_s0_location(double alpha, double beta, double gamma, double delta1) {
    if (alpha == 1.0) return delta1 + (2.0 / std::numbers::pi) * beta * gamma * std::log(gamma);
    return delta1 + beta * gamma * std::tan(0.5 * std::numbers::pi * alpha);
}

UnivariateStableParams marginal_params(const DiscreteSpectralMeasure& m, std::size_t k) {
    if (k >= m.dim()) throw ParameterError("coordinate index out of range");
    std::vector<double> e(m.dim(), 0.0);
    e[k] = 1.0;
    const ProjectionParams p = projection_params(m, e);
    return {m.alpha(), p.beta, p.gamma, s1_to_s0_location(m.alpha(), p.beta, p.gamma, p.delta)};
}

}  // namespace mvstable
