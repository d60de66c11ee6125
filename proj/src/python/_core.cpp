#include "mvstable/error.hpp"
#include "mvstable/estimator.hpp"
#include "mvstable/gof.hpp"
#include "mvstable/json_io.hpp"
#include "mvstable/risk.hpp"
#include "mvstable/sampler.hpp"
#include "mvstable/spectral.hpp"
#include "mvstable/univariate.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace mvstable;

namespace {

ReturnMatrix as_returns(const Eigen::MatrixXd& x) { return ReturnMatrix::from_values(x); }

DiscreteSpectralMeasure make_measure(double alpha, std::vector<double> delta,
                                     const std::vector<std::pair<std::vector<double>, double>>& atoms) {
    std::vector<Atom> a;
    for (const auto& [s, lambda] : atoms) a.push_back({s, lambda});
    return {alpha, std::move(delta), std::move(a)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Univariate and multivariate stable laws: evaluation, fitting, simulation, tests and tail risk";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
    py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
    py::register_exception<EstimationError>(m, "EstimationError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<LoadError>(m, "LoadError", base.ptr());

    py::class_<UnivariateStableParams>(m, "StableParams")
        .def(py::init([](double alpha, double beta, double gamma, double delta) {
                 UnivariateStableParams p{alpha, beta, gamma, delta};
                 p.validate();
                 return p;
             }),
             py::arg("alpha"), py::arg("beta") = 0.0, py::arg("gamma") = 1.0, py::arg("delta") = 0.0)
        .def_readonly("alpha", &UnivariateStableParams::alpha)
        .def_readonly("beta", &UnivariateStableParams::beta)
        .def_readonly("gamma", &UnivariateStableParams::gamma)
        .def_readonly("delta", &UnivariateStableParams::delta)
        .def("__eq__", [](const UnivariateStableParams& a, const UnivariateStableParams& b) { return a == b; })
        .def("__repr__", [](const UnivariateStableParams& p) {
            return "StableParams(alpha=" + std::to_string(p.alpha) + ", beta=" + std::to_string(p.beta) +
                   ", gamma=" + std::to_string(p.gamma) + ", delta=" + std::to_string(p.delta) + ")";
        });

    m.def("charfun", &charfun, py::arg("p"), py::arg("t"));
    m.def("pdf",
          [](const UnivariateStableParams& p, const std::vector<double>& x) {
              std::vector<double> out;
              for (double v : x) out.push_back(pdf(p, v));
              return out;
          },
          py::arg("p"), py::arg("x"));
    m.def("pdf", &pdf, py::arg("p"), py::arg("x"));
    m.def("cdf", [](const UnivariateStableParams& p, const std::vector<double>& x) { return cdf_many(p, x); },
          py::arg("p"), py::arg("x"));
    m.def("cdf", &cdf, py::arg("p"), py::arg("x"));
    m.def("quantile", &quantile, py::arg("p"), py::arg("q"));
    m.def("fit_quantile", [](const std::vector<double>& x) { return fit_quantile(x); }, py::arg("sample"));
    m.def("fit_univariate", [](const std::vector<double>& x) { return fit_univariate(x); }, py::arg("sample"));
    m.def("sample_univariate", &sample_univariate, py::arg("p"), py::arg("n"), py::arg("seed"));

    py::class_<DiscreteSpectralMeasure>(m, "SpectralMeasure")
        .def(py::init(&make_measure), py::arg("alpha"), py::arg("delta"), py::arg("atoms"),
             "atoms: list of (unit vector, weight)")
        .def_property_readonly("alpha", &DiscreteSpectralMeasure::alpha)
        .def_property_readonly("delta", &DiscreteSpectralMeasure::delta)
        .def_property_readonly("dim", &DiscreteSpectralMeasure::dim)
        .def_property_readonly("atoms",
                               [](const DiscreteSpectralMeasure& s) {
                                   std::vector<std::pair<std::vector<double>, double>> out;
                                   for (const auto& a : s.atoms()) out.emplace_back(a.s, a.lambda);
                                   return out;
                               })
        .def("to_json", [](const DiscreteSpectralMeasure& s) { return to_json(s).dump(); })
        .def_static("from_json", [](const std::string& text) { return measure_from_json(nlohmann::json::parse(text)); });

    m.def("charfun_mv", &charfun_mv, py::arg("measure"), py::arg("t"));
    m.def("marginal_params", &marginal_params, py::arg("measure"), py::arg("k"));
    m.def("load_measure", [](const std::string& path) { return load_measure(path); }, py::arg("path"));
    m.def("sample_multivariate",
          [](const DiscreteSpectralMeasure& s, std::size_t n, std::uint64_t seed) {
              return sample_multivariate(s, n, seed).values;
          },
          py::arg("measure"), py::arg("n"), py::arg("seed"));

    m.def("make_grid", [](std::size_t d, std::size_t n) { return make_grid(d, n).points(); }, py::arg("d"), py::arg("n"));
    m.def("nnls", &nnls, py::arg("A"), py::arg("c"));

    py::class_<EstimationReport>(m, "EstimationReport")
        .def_readonly("measure", &EstimationReport::measure)
        .def_readonly("pooled_alpha", &EstimationReport::pooled_alpha)
        .def_readonly("residual_norm", &EstimationReport::residual_norm)
        .def_readonly("delta_hat", &EstimationReport::delta_hat);

    m.def(
        "fit_spectral",
        [](const Eigen::MatrixXd& x, std::size_t n, const std::string& alpha_mode, const std::string& coupling) {
            SpectralFitOptions o;
            if (alpha_mode == "projections") o.alpha_mode = AlphaMode::projections;
            else if (alpha_mode != "marginals") throw ConfigError("alpha_mode must be 'marginals' or 'projections'");
            if (coupling == "block") o.coupling = Coupling::block;
            else if (coupling != "full") throw ConfigError("coupling must be 'full' or 'block'");
            return fit_spectral(as_returns(x), n, o);
        },
        py::arg("data"), py::arg("n"), py::arg("alpha_mode") = "marginals", py::arg("coupling") = "full");

    py::class_<TestReport>(m, "TestReport")
        .def_readonly("statistic", &TestReport::statistic)
        .def_readonly("critical_value", &TestReport::critical_value)
        .def_readonly("replicates", &TestReport::replicates)
        .def_readonly("failed", &TestReport::failed)
        .def_readonly("level", &TestReport::level)
        .def_readonly("reject", &TestReport::reject)
        .def_readonly("seed", &TestReport::seed);

    m.def("ad_statistic", [](const std::vector<double>& x, const UnivariateStableParams& p) { return ad_statistic(x, p); },
          py::arg("sample"), py::arg("p"));
    m.def("ad_test", [](const std::vector<double>& x, std::size_t B, std::uint64_t seed) { return ad_test(x, B, seed); },
          py::arg("sample"), py::arg("B"), py::arg("seed"));
    m.def("kendall_cvm_test",
          [](const Eigen::MatrixXd& x, std::size_t n, std::size_t B, std::uint64_t seed) {
              return kendall_cvm_test(as_returns(x), n, B, seed);
          },
          py::arg("data"), py::arg("n"), py::arg("B"), py::arg("seed"));
    m.def("alpha_equality_test",
          [](const Eigen::MatrixXd& x, std::size_t B, std::uint64_t seed) { return alpha_equality_test(as_returns(x), B, seed); },
          py::arg("data"), py::arg("B"), py::arg("seed"));

    m.def("var_empirical", [](const std::vector<double>& r, double q) { return var_empirical(losses_from_returns(r), q).value; },
          py::arg("returns"), py::arg("q"), "Empirical loss quantile of a return series");
    m.def("var_stable", [](const UnivariateStableParams& p, double q) { return var_stable(p, q).value; }, py::arg("p"),
          py::arg("q"));
    m.def("var_gpd",
          [](const std::vector<double>& r, double q, double threshold_q) {
              const GpdParams g = fit_gpd(losses_from_returns(r), threshold_q);
              return py::dict(py::arg("value") = var_gpd(g, q).value, py::arg("xi") = g.xi, py::arg("sigma") = g.sigma,
                              py::arg("u") = g.u, py::arg("zeta_u") = g.zeta_u);
          },
          py::arg("returns"), py::arg("q"), py::arg("threshold_q") = 0.97);

    py::class_<ConditionalProbability>(m, "ConditionalProbability")
        .def_readonly("estimate", &ConditionalProbability::estimate)
        .def_readonly("std_error", &ConditionalProbability::std_error)
        .def_readonly("conditioning_count", &ConditionalProbability::conditioning_count);
    m.def("cond_tail_prob",
          [](const DiscreteSpectralMeasure& s, const std::vector<double>& thr, const std::vector<std::size_t>& cond,
             std::size_t target, std::size_t n_mc, std::uint64_t seed) { return cond_tail_prob(s, thr, cond, target, n_mc, seed); },
          py::arg("measure"), py::arg("thresholds"), py::arg("cond"), py::arg("target"), py::arg("n_mc") = 1000000,
          py::arg("seed") = 0);
    m.def("cond_tail_prob_normal",
          [](const Eigen::MatrixXd& x, const std::vector<double>& thr, const std::vector<std::size_t>& cond,
             std::size_t target, std::uint64_t seed) { return cond_tail_prob_normal(as_returns(x), thr, cond, target, seed); },
          py::arg("data"), py::arg("thresholds"), py::arg("cond"), py::arg("target"), py::arg("seed") = 0);

    py::class_<TailDependence>(m, "TailDependence")
        .def_readonly("q", &TailDependence::q)
        .def_readonly("theta_l", &TailDependence::theta_l)
        .def_readonly("theta_u", &TailDependence::theta_u)
        .def_readonly("tail_count", &TailDependence::tail_count)
        .def_readonly("sparse", &TailDependence::sparse);
    m.def("tail_dependence",
          [](const Eigen::MatrixXd& x, double q, std::size_t l, std::size_t k) { return tail_dependence(as_returns(x), q, l, k); },
          py::arg("data"), py::arg("q"), py::arg("l") = 0, py::arg("k") = 1);
    m.def("gain_loss_ratio", [](const std::vector<double>& r, double q) { return gain_loss_ratio(r, q); }, py::arg("returns"),
          py::arg("q"));
}
