// Command-line front end: reads price or return files, cuts them into
// windows and writes CSV tables, JSON models and a run manifest into --out.

#include "mvstable/data.hpp"
#include "mvstable/error.hpp"
#include "mvstable/estimator.hpp"
#include "mvstable/gof.hpp"
#include "mvstable/json_io.hpp"
#include "mvstable/random.hpp"
#include "mvstable/risk.hpp"
#include "mvstable/sampler.hpp"
#include "mvstable/univariate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef MVSTABLE_VERSION
#define MVSTABLE_VERSION "unknown"
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mvstable;

namespace {

struct Config {
    std::vector<std::string> inputs;
    std::string returns;
    std::vector<std::string> assets;
    std::string date_column = "date";
    std::string price_column = "close";
    std::size_t windows = 1;
    std::size_t width = 0;  // 0: all rows
    std::size_t stride = 0;
    std::vector<std::size_t> n = {8};
    std::string alpha_mode = "marginals";
    std::size_t bootstrap = 100;
    std::uint64_t seed = 1;
    std::vector<double> q;
    std::string out = ".";
    std::string model;
    std::size_t n_draws = 1000;
    double threshold_q = 0.97;
    std::vector<double> thresholds;
    std::vector<std::size_t> cond = {1};
    std::size_t target = 2;
    std::size_t n_mc = 1'000'000;
};

/// Error raised with the name of the failing stage attached.
class StageError : public std::runtime_error {
public:
    StageError(const std::string& stage, const std::string& what) : std::runtime_error(stage + ": " + what) {}
};

template <class F>
auto stage(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path), path_(path) {
        if (!out_) throw LoadError("cannot write " + path.string());
        row(header);
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }
    [[nodiscard]] const fs::path& path() const { return path_; }

private:
    std::ofstream out_;
    fs::path path_;
};

ReturnMatrix load_data(const Config& c) {
    return stage("load", [&] {
        if (!c.returns.empty()) {
            if (!c.inputs.empty()) throw ConfigError("give either --input or --returns, not both");
            ReturnMatrix r = read_returns_csv(c.returns);
            if (!c.assets.empty()) {
                if (c.assets.size() != r.cols()) throw ConfigError("--assets does not match the return columns");
                r.assets = c.assets;
            }
            return r;
        }
        if (c.inputs.empty()) throw ConfigError("no input: pass --input price files or --returns");
        if (!c.assets.empty() && c.assets.size() != c.inputs.size())
            throw ConfigError("--assets needs one name per --input file");
        CsvFormat fmt;
        fmt.date_column = c.date_column;
        fmt.price_column = c.price_column;
        std::vector<PriceSeries> series;
        for (std::size_t i = 0; i < c.inputs.size(); ++i)
            series.push_back(load_prices(c.inputs[i], fmt, c.assets.empty() ? std::string{} : c.assets[i]));
        return series.size() == 1 ? logreturns(series.front()) : align(series);
    });
}

std::vector<ReturnMatrix> cut(const Config& c, const ReturnMatrix& r) {
    return stage("windows", [&] { return windows(r, c.windows, c.width == 0 ? r.rows() : c.width, c.stride); });
}

AlphaMode alpha_mode(const Config& c) {
    return c.alpha_mode == "projections" ? AlphaMode::projections : AlphaMode::marginals;
}

std::string window_range(const ReturnMatrix& w) {
    return w.dates.empty() ? std::string{} : w.dates.front() + "," + w.dates.back();
}

/// Seed of one task inside a run: window w (1-based), item k.
std::uint64_t task_seed(std::uint64_t seed, std::size_t w, std::size_t k) { return derive_seed(derive_seed(seed, w), k); }

void write_manifest(const Config& c, const std::string& command, const std::vector<fs::path>& outputs) {
    json files = json::array();
    for (const auto& p : outputs) files.push_back(p.filename().string());
    const json manifest = {
        {"command", command},
        {"version", MVSTABLE_VERSION},
        {"config",
         {{"input", c.inputs},
          {"returns", c.returns},
          {"assets", c.assets},
          {"windows", c.windows},
          {"width", c.width},
          {"stride", c.stride},
          {"n", c.n},
          {"alpha_mode", c.alpha_mode},
          {"bootstrap", c.bootstrap},
          {"q", c.q},
          {"model", c.model},
          {"n_draws", c.n_draws},
          {"threshold_q", c.threshold_q},
          {"thresholds", c.thresholds},
          {"cond", c.cond},
          {"target", c.target},
          {"n_mc", c.n_mc}}},
        {"seeds",
         {{"seed", c.seed},
          {"derivation", "task seed = derive_seed(derive_seed(seed, window), item); bootstrap replicate r uses "
                         "task seed + r + 1"}}},
        {"outputs", files}};
    save_json(fs::path(c.out) / "manifest.json", manifest);
}

std::vector<fs::path> run_fit_uni(const Config& c) {
    const auto parts = cut(c, load_data(c));
    CsvWriter csv(fs::path(c.out) / "fit_uni.csv", {"window", "first_date", "last_date", "asset", "alpha", "beta", "gamma", "delta"});
    for (std::size_t w = 0; w < parts.size(); ++w)
        for (std::size_t k = 0; k < parts[w].cols(); ++k) {
            const auto p = stage("fit-uni window " + std::to_string(w + 1) + " asset " + parts[w].assets[k],
                                 [&] { return fit_univariate(parts[w].column(k)); });
            const auto range = window_range(parts[w]);
            csv.row({std::to_string(w + 1), range.empty() ? "" : parts[w].dates.front(),
                     range.empty() ? "" : parts[w].dates.back(), parts[w].assets[k], num(p.alpha), num(p.beta),
                     num(p.gamma), num(p.delta)});
        }
    return {csv.path()};
}

std::vector<std::string> report_cells(const TestReport& r) {
    return {num(r.statistic), num(r.critical_value), r.reject ? "1" : "0", std::to_string(r.replicates),
            std::to_string(r.failed), std::to_string(r.seed)};
}

std::vector<fs::path> run_ad_test(const Config& c) {
    const auto parts = cut(c, load_data(c));
    CsvWriter csv(fs::path(c.out) / "ad_test.csv",
                  {"window", "asset", "statistic", "critical_value", "reject", "replicates", "failed", "seed"});
    for (std::size_t w = 0; w < parts.size(); ++w)
        for (std::size_t k = 0; k < parts[w].cols(); ++k) {
            const auto r = stage("ad-test window " + std::to_string(w + 1) + " asset " + parts[w].assets[k], [&] {
                return ad_test(parts[w].column(k), c.bootstrap, task_seed(c.seed, w + 1, k));
            });
            auto cells = report_cells(r);
            cells.insert(cells.begin(), {std::to_string(w + 1), parts[w].assets[k]});
            csv.row(cells);
        }
    return {csv.path()};
}

std::vector<fs::path> run_fit_spectral(const Config& c) {
    const auto parts = cut(c, load_data(c));
    std::vector<fs::path> outputs;
    CsvWriter csv(fs::path(c.out) / "fit_spectral.csv", {"window", "n", "pooled_alpha", "residual_norm", "model"});
    for (std::size_t w = 0; w < parts.size(); ++w)
        for (std::size_t n : c.n) {
            const std::string name = "measure_w" + std::to_string(w + 1) + "_n" + std::to_string(n) + ".json";
            const auto rep = stage("fit-spectral window " + std::to_string(w + 1) + " n " + std::to_string(n), [&] {
                return fit_spectral(parts[w], n, {alpha_mode(c)});
            });
            json j = to_json(rep);
            j["assets"] = parts[w].assets;
            save_json(fs::path(c.out) / name, j);
            outputs.push_back(fs::path(c.out) / name);
            csv.row({std::to_string(w + 1), std::to_string(n), num(rep.pooled_alpha), num(rep.residual_norm), name});
        }
    outputs.insert(outputs.begin(), csv.path());
    return outputs;
}

std::vector<fs::path> run_kendall_test(const Config& c) {
    const auto parts = cut(c, load_data(c));
    CsvWriter csv(fs::path(c.out) / "kendall_test.csv",
                  {"window", "n", "statistic", "critical_value", "reject", "replicates", "failed", "seed"});
    for (std::size_t w = 0; w < parts.size(); ++w)
        for (std::size_t i = 0; i < c.n.size(); ++i) {
            const std::size_t n = c.n[i];
            const auto r = stage("kendall-test window " + std::to_string(w + 1) + " n " + std::to_string(n), [&] {
                return kendall_cvm_test(parts[w], n, c.bootstrap, task_seed(c.seed, w + 1, i), {alpha_mode(c)});
            });
            auto cells = report_cells(r);
            cells.insert(cells.begin(), {std::to_string(w + 1), std::to_string(n)});
            csv.row(cells);
        }
    return {csv.path()};
}

std::vector<fs::path> run_alpha_eq(const Config& c) {
    const auto parts = cut(c, load_data(c));
    CsvWriter csv(fs::path(c.out) / "alpha_eq.csv",
                  {"window", "statistic", "critical_value", "reject", "replicates", "failed", "seed"});
    for (std::size_t w = 0; w < parts.size(); ++w) {
        const auto r = stage("alpha-eq window " + std::to_string(w + 1), [&] {
            return alpha_equality_test(parts[w], c.bootstrap, task_seed(c.seed, w + 1, 0), c.n.front());
        });
        auto cells = report_cells(r);
        cells.insert(cells.begin(), std::to_string(w + 1));
        csv.row(cells);
    }
    return {csv.path()};
}

std::vector<fs::path> run_simulate(const Config& c) {
    if (c.model.empty()) throw StageError("simulate", "--model is required");
    const auto m = stage("load model", [&] { return load_measure(c.model); });
    const auto x = stage("simulate", [&] { return sample_multivariate(m, c.n_draws, c.seed); });
    const fs::path path = fs::path(c.out) / "simulated.csv";
    std::ofstream out(path);
    if (!out) throw StageError("simulate", "cannot write " + path.string());
    write_csv(out, x);
    return {path};
}

std::vector<double> levels(const Config& c, std::vector<double> fallback) { return c.q.empty() ? fallback : c.q; }

std::vector<fs::path> run_var(const Config& c) {
    const auto parts = cut(c, load_data(c));
    CsvWriter csv(fs::path(c.out) / "var.csv", {"window", "asset", "method", "q", "value", "stderr"});
    const auto qs = levels(c, {0.99, 0.995, 0.999});
    for (std::size_t w = 0; w < parts.size(); ++w)
        for (std::size_t k = 0; k < parts[w].cols(); ++k) {
            const std::string where = "window " + std::to_string(w + 1) + " asset " + parts[w].assets[k];
            const auto returns = parts[w].column(k);
            const auto losses = losses_from_returns(returns);
            const auto stable = stage("var stable fit " + where, [&] { return fit_univariate(returns); });
            const auto gpd = stage("var gpd fit " + where, [&] { return fit_gpd(losses, c.threshold_q); });
            for (double q : qs) {
                std::vector<VarEstimate> est = {var_empirical(losses, q)};
                // The GPD quantile only exists above the threshold level.
                if (q > 1.0 - gpd.zeta_u) est.push_back(var_gpd(gpd, q));
                est.push_back(stage("var stable " + where, [&] { return var_stable(stable, q); }));
                for (const auto& e : est)
                    csv.row({std::to_string(w + 1), parts[w].assets[k], std::string(to_string(e.method)), num(q),
                             num(e.value), ""});
            }
        }
    return {csv.path()};
}

std::vector<fs::path> run_condprob(const Config& c) {
    const auto parts = cut(c, load_data(c));
    CsvWriter csv(fs::path(c.out) / "condprob.csv", {"window", "model", "target", "cond", "estimate", "stderr", "count"});
    const std::size_t d = parts.front().cols();
    std::vector<double> thr = c.thresholds.empty() ? std::vector<double>(d, -10.0) : c.thresholds;
    if (thr.size() == 1) thr.assign(d, thr.front());
    // Coordinates are 1-based on the command line.
    std::vector<std::size_t> cond;
    for (std::size_t k : c.cond) {
        if (k == 0) throw StageError("condprob", "coordinates are 1-based");
        cond.push_back(k - 1);
    }
    if (c.target == 0) throw StageError("condprob", "coordinates are 1-based");
    const std::size_t target = c.target - 1;
    std::string cond_label;
    for (std::size_t k : c.cond) cond_label += (cond_label.empty() ? "" : " ") + std::to_string(k);
    std::vector<fs::path> outputs = {csv.path()};
    for (std::size_t w = 0; w < parts.size(); ++w) {
        const std::string where = "window " + std::to_string(w + 1);
        const auto fit = stage("condprob fit " + where, [&] { return fit_spectral(parts[w], c.n.front(), {alpha_mode(c)}); });
        const auto s = stage("condprob stable " + where, [&] {
            return cond_tail_prob(fit.measure, thr, cond, target, c.n_mc, task_seed(c.seed, w + 1, 0));
        });
        const auto g = stage("condprob normal " + where, [&] {
            return cond_tail_prob_normal(parts[w], thr, cond, target, task_seed(c.seed, w + 1, 1));
        });
        csv.row({std::to_string(w + 1), "stable", std::to_string(c.target), cond_label, num(s.estimate), num(s.std_error),
                 std::to_string(s.conditioning_count)});
        csv.row({std::to_string(w + 1), "normal", std::to_string(c.target), cond_label, num(g.estimate), num(g.std_error),
                 std::to_string(g.conditioning_count)});
    }
    return outputs;
}

std::vector<fs::path> run_taildep(const Config& c) {
    const auto parts = cut(c, load_data(c));
    CsvWriter csv(fs::path(c.out) / "taildep.csv",
                  {"window", "asset_x", "asset_y", "q", "theta_l", "theta_u", "tail_count", "sparse"});
    const auto qs = levels(c, {0.01, 0.025, 0.05, 0.1});
    for (std::size_t w = 0; w < parts.size(); ++w)
        for (std::size_t l = 0; l < parts[w].cols(); ++l)
            for (std::size_t k = l + 1; k < parts[w].cols(); ++k)
                for (double q : qs) {
                    const auto t = stage("taildep window " + std::to_string(w + 1),
                                         [&] { return tail_dependence(parts[w], q, l, k); });
                    csv.row({std::to_string(w + 1), parts[w].assets[l], parts[w].assets[k], num(q), num(t.theta_l),
                             num(t.theta_u), std::to_string(t.tail_count), t.sparse ? "1" : "0"});
                }
    return {csv.path()};
}

std::vector<fs::path> run_gainloss(const Config& c) {
    const auto parts = cut(c, load_data(c));
    CsvWriter csv(fs::path(c.out) / "gainloss.csv", {"window", "asset", "q", "ratio"});
    const auto qs = levels(c, {0.9, 0.95, 0.99});
    for (std::size_t w = 0; w < parts.size(); ++w)
        for (std::size_t k = 0; k < parts[w].cols(); ++k)
            for (double q : qs) {
                const double r = stage("gainloss window " + std::to_string(w + 1) + " asset " + parts[w].assets[k],
                                       [&] { return gain_loss_ratio(parts[w].column(k), q); });
                csv.row({std::to_string(w + 1), parts[w].assets[k], num(q), num(r)});
            }
    return {csv.path()};
}

void add_data_options(CLI::App* app, Config& c) {
    app->add_option("--input", c.inputs, "Price CSV files, one per asset")->check(CLI::ExistingFile);
    app->add_option("--returns", c.returns, "Return CSV (date column optional)")->check(CLI::ExistingFile);
    app->add_option("--assets", c.assets, "Asset names, one per input");
    app->add_option("--date-column", c.date_column, "Date column name")->capture_default_str();
    app->add_option("--price-column", c.price_column, "Price column name")->capture_default_str();
    app->add_option("--windows", c.windows, "Number of windows")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--width", c.width, "Rows per window (default: all)");
    app->add_option("--stride", c.stride, "Rows between window starts (default: spread to the end)");
}

void add_seed(CLI::App* app, Config& c) { app->add_option("--seed", c.seed, "Base seed")->capture_default_str(); }

void add_fit_options(CLI::App* app, Config& c) {
    app->add_option("--n", c.n, "Grid points per circle (even, >= 4)")->capture_default_str();
    app->add_option("--alpha-mode", c.alpha_mode, "Pooled alpha source")
        ->check(CLI::IsMember({"marginals", "projections"}))
        ->capture_default_str();
}

void add_bootstrap(CLI::App* app, Config& c) {
    app->add_option("--bootstrap", c.bootstrap, "Bootstrap replicates (>= 100)")
        ->check(CLI::Range(std::size_t{100}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multivariate stable models: fitting, simulation, goodness of fit and tail risk"};
    app.set_version_flag("--version", MVSTABLE_VERSION);
    app.require_subcommand(1);
    Config c;
    app.add_option("--out", c.out, "Output directory")->capture_default_str();

    struct Command {
        CLI::App* app;
        std::vector<fs::path> (*run)(const Config&);
    };
    std::vector<Command> commands;
    auto add = [&](const char* name, const char* help, std::vector<fs::path> (*run)(const Config&)) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--out", c.out, "Output directory")->capture_default_str();
        commands.push_back({sub, run});
        return sub;
    };

    auto* fit_uni = add("fit-uni", "Univariate stable fit per window and asset", run_fit_uni);
    add_data_options(fit_uni, c);

    auto* ad = add("ad-test", "Bootstrap Anderson-Darling test per window and asset", run_ad_test);
    add_data_options(ad, c);
    add_bootstrap(ad, c);
    add_seed(ad, c);

    auto* spectral = add("fit-spectral", "Discrete spectral measure fit per window and grid size", run_fit_spectral);
    add_data_options(spectral, c);
    add_fit_options(spectral, c);

    auto* kendall = add("kendall-test", "Kendall-function Cramer-von Mises test of the spectral fit", run_kendall_test);
    add_data_options(kendall, c);
    add_fit_options(kendall, c);
    add_bootstrap(kendall, c);
    add_seed(kendall, c);

    auto* aeq = add("alpha-eq", "Bootstrap test of equal marginal alphas", run_alpha_eq);
    add_data_options(aeq, c);
    add_fit_options(aeq, c);
    add_bootstrap(aeq, c);
    add_seed(aeq, c);

    auto* sim = add("simulate", "Draw from a spectral measure JSON", run_simulate);
    sim->add_option("--model", c.model, "Measure or fit-spectral JSON")->required()->check(CLI::ExistingFile);
    sim->add_option("--n-draws", c.n_draws, "Number of draws")->capture_default_str();
    add_seed(sim, c);

    auto* var = add("var", "Value at risk under the empirical, GPD and stable models", run_var);
    add_data_options(var, c);
    var->add_option("--q", c.q, "Loss quantile levels");
    var->add_option("--threshold-q", c.threshold_q, "GPD threshold quantile")->capture_default_str();

    auto* cond = add("condprob", "Conditional tail probabilities, stable fit versus Gaussian fit", run_condprob);
    add_data_options(cond, c);
    add_fit_options(cond, c);
    add_seed(cond, c);
    cond->add_option("--threshold", c.thresholds, "Return thresholds per coordinate (one value applies to all)");
    cond->add_option("--cond", c.cond, "Conditioning coordinates (1-based)")->capture_default_str();
    cond->add_option("--target", c.target, "Target coordinate (1-based)")->capture_default_str();
    cond->add_option("--n-mc", c.n_mc, "Monte Carlo draws from the stable fit")->capture_default_str();

    auto* tail = add("taildep", "Empirical tail dependence per asset pair", run_taildep);
    add_data_options(tail, c);
    tail->add_option("--q", c.q, "Tail levels");

    auto* gl = add("gainloss", "Ratio of upper to lower return quantiles", run_gainloss);
    add_data_options(gl, c);
    gl->add_option("--q", c.q, "Quantile levels above 0.5");

    CLI11_PARSE(app, argc, argv);

    for (const auto& cmd : commands) {
        if (!cmd.app->parsed()) continue;
        try {
            fs::create_directories(c.out);
            const auto outputs = cmd.run(c);
            write_manifest(c, cmd.app->get_name(), outputs);
            for (const auto& p : outputs) std::cout << p.string() << '\n';
            return 0;
        } catch (const std::exception& e) {
            std::cerr << "error: " << cmd.app->get_name() << ": " << e.what() << '\n';
            return 1;
        }
    }
    return 1;
}
