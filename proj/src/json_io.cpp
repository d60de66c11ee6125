#include "mvstable/json_io.hpp"

#include "mvstable/error.hpp"

#include <fstream>

namespace mvstable {

using nlohmann::json;

json to_json(const UnivariateStableParams& p) {
    return {{"alpha", p.alpha}, {"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta}};
}

UnivariateStableParams params_from_json(const json& j) {
    try {
        UnivariateStableParams p{j.at("alpha").get<double>(), j.at("beta").get<double>(), j.at("gamma").get<double>(),
                                 j.at("delta").get<double>()};
        p.validate();
        return p;
    } catch (const json::exception& e) {
        throw LoadError(std::string("stable parameters: ") + e.what());
    }
}

json to_json(const DiscreteSpectralMeasure& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms()) atoms.push_back({{"s", a.s}, {"lambda", a.lambda}});
    return {{"alpha", m.alpha()}, {"delta", m.delta()}, {"atoms", atoms}};
}

DiscreteSpectralMeasure measure_from_json(const json& j) {
    try {
        std::vector<Atom> atoms;
        for (const auto& a : j.at("atoms")) atoms.push_back({a.at("s").get<std::vector<double>>(), a.at("lambda").get<double>()});
        return {j.at("alpha").get<double>(), j.at("delta").get<std::vector<double>>(), std::move(atoms)};
    } catch (const json::exception& e) {
        throw LoadError(std::string("spectral measure: ") + e.what());
    }
}

json to_json(const EstimationReport& r) {
    json fits = json::array();
    for (const auto& f : r.per_projection)
        fits.push_back({{"t", f.t}, {"alpha_raw", f.alpha_raw}, {"beta", f.beta}, {"gamma", f.gamma}, {"delta", f.delta}});
    return {{"measure", to_json(r.measure)},
            {"pooled_alpha", r.pooled_alpha},
            {"residual_norm", r.residual_norm},
            {"delta_hat", r.delta_hat},
            {"projections", fits}};
}

json to_json(const TestReport& r) {
    return {{"statistic", r.statistic}, {"critical_value", r.critical_value}, {"replicates", r.replicates},
            {"failed", r.failed},       {"level", r.level},                   {"reject", r.reject},
            {"seed", r.seed}};
}

json to_json(const GpdParams& g) { return {{"xi", g.xi}, {"sigma", g.sigma}, {"u", g.u}, {"zeta_u", g.zeta_u}}; }

DiscreteSpectralMeasure load_measure(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw LoadError(path.string() + ": " + e.what());
    }
    // A fit report carries the measure under "measure".
    return measure_from_json(j.contains("measure") ? j.at("measure") : j);
}

void save_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace mvstable
