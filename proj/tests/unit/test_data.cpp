#include "mvstable/data.hpp"
#include "mvstable/error.hpp"
#include "mvstable/json_io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mvstable;

namespace {

PriceSeries parse(const std::string& text, std::string asset = "a") {
    std::istringstream in(text);
    return parse_prices(in, {}, std::move(asset));
}

PriceSeries series(std::string asset, const std::vector<std::string>& dates, const std::vector<double>& prices) {
    return {std::move(asset), dates, prices};
}

}  // namespace

TEST_CASE("parse prices") {
    const auto s = parse("date,close\n2020-01-01,100\n2020-01-02,110\n");
    REQUIRE(s.prices.size() == 2);
    CHECK(s.dates[1] == "2020-01-02");
    CHECK(s.prices[1] == 110.0);

    const auto t = parse("Date,Open,Close\n\"Jan 03, 2020\",1,\"1,200.5\"\n\"Jan 02, 2020\",1,1100\n");
    REQUIRE(t.prices.size() == 2);
    CHECK(t.dates[0] == "2020-01-02");
    CHECK(t.prices[1] == 1200.5);

    CHECK_THROWS_AS(parse("2020-01-01,100\n2020-01-02,110\n"), LoadError);
    CHECK_THROWS_AS(parse(""), LoadError);
    CHECK_THROWS_AS(parse("date,close\n2020-01-01,-1\n"), LoadError);
    CHECK_THROWS_AS(parse("date,close\n2020-01-01,abc\n"), LoadError);
    CHECK_THROWS_AS(parse("date,close\n2020-13-01,1\n"), LoadError);
    try {
        (void)parse("date,close\n2020-01-01,100\n2020-01-02,101\n2020-01-01,102\n");
        FAIL("duplicate accepted");
    } catch (const LoadError& e) {
        CHECK(std::string(e.what()).find("row 4") != std::string::npos);
    }
}

TEST_CASE("logreturns") {
    auto r = logreturns(series("a", {"2020-01-01", "2020-01-02"}, {100, 100}));
    CHECK(r.values(0, 0) == 0.0);
    r = logreturns(series("a", {"2020-01-01", "2020-01-02"}, {100, 110}));
    CHECK(r.values(0, 0) == doctest::Approx(100 * std::log(1.1)));
    CHECK(r.dates == std::vector<std::string>{"2020-01-02"});
    r = logreturns(series("a", {"2020-01-01", "2020-01-02", "2020-01-03", "2020-01-04"}, {1, 2, 4, 8}));
    for (Eigen::Index i = 0; i < 3; ++i) CHECK(r.values(i, 0) == doctest::Approx(100 * std::log(2.0)));
    CHECK_THROWS((void)logreturns(series("a", {"2020-01-01"}, {1})));
}

TEST_CASE("align") {
    const auto a = series("a", {"2020-01-01", "2020-01-02", "2020-01-03", "2020-01-04"}, {1, 2, 3, 4});
    const auto b = series("b", {"2020-01-01", "2020-01-02", "2020-01-03", "2020-01-04"}, {5, 4, 3, 2});
    auto r = align({a, b});
    CHECK(r.rows() == 3);
    CHECK(r.assets == std::vector<std::string>{"a", "b"});
    const auto ra = logreturns(a);
    CHECK(r.values.col(0) == ra.values.col(0));

    const auto c = series("c", {"2020-01-01", "2020-01-02", "2020-01-04"}, {5, 4, 2});
    r = align({a, c});
    CHECK(r.rows() == 2);
    CHECK(r.dates == std::vector<std::string>{"2020-01-02", "2020-01-04"});
    CHECK(r.values(1, 0) == doctest::Approx(100 * std::log(4.0 / 2.0)));
    CHECK(r.values(1, 1) == doctest::Approx(100 * std::log(2.0 / 4.0)));

    CHECK_THROWS((void)align({a, series("d", {"2021-01-01", "2021-01-02"}, {1, 2})}));
    CHECK_THROWS((void)align({a}));
}

TEST_CASE("windows") {
    const auto r = ReturnMatrix::from_values(Eigen::MatrixXd::Random(1090, 2));
    CHECK(window_starts(1000, 1, 1000) == std::vector<std::size_t>{0});
    const auto full = windows(ReturnMatrix::from_values(r.values.topRows(1000)), 1, 1000);
    CHECK(full.front().values == r.values.topRows(1000));

    const auto starts = window_starts(1090, 10, 1000, 10);
    REQUIRE(starts.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(starts[i] == 10 * i);
    const auto w = windows(r, 10, 1000, 10);
    CHECK(w[3].values == r.values.middleRows(30, 1000));

    const auto def = window_starts(1090, 10, 1000);
    CHECK(def.back() == 90);
    CHECK(def.front() == 0);
    for (std::size_t i = 1; i < def.size(); ++i) CHECK(def[i] - def[i - 1] <= 1000);

    CHECK_THROWS_AS((void)window_starts(900, 1, 1000), ConfigError);
    CHECK_THROWS_AS((void)window_starts(1090, 10, 1000, 20), ConfigError);
}

TEST_CASE("return CSV round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "mvstable_unit";
    std::filesystem::create_directories(dir);
    ReturnMatrix r = logreturns(series("btc", {"2020-01-01", "2020-01-02", "2020-01-03"}, {1, 1.5, 1.2}));
    {
        std::ofstream out(dir / "r.csv");
        write_csv(out, r);
    }
    const auto back = read_returns_csv(dir / "r.csv");
    CHECK(back.dates == r.dates);
    CHECK(back.assets == r.assets);
    CHECK(back.values == r.values);

    const auto u = ReturnMatrix::from_values((Eigen::MatrixXd(2, 2) << 1.5, -2, 0.25, 1e-7).finished());
    {
        std::ofstream out(dir / "u.csv");
        write_csv(out, u);
    }
    const auto ub = read_returns_csv(dir / "u.csv");
    CHECK(ub.dates.empty());
    CHECK(ub.values == u.values);
}

TEST_CASE("JSON round trips") {
    const DiscreteSpectralMeasure m(1.37, {0.1, -0.2}, {{{1, 0}, 0.3}, {{0.6, 0.8}, 1.7}});
    const auto back = measure_from_json(to_json(m));
    CHECK(back.alpha() == m.alpha());
    CHECK(back.delta() == m.delta());
    REQUIRE(back.atoms().size() == 2);
    CHECK(back.atoms()[1].s == m.atoms()[1].s);
    CHECK(back.atoms()[1].lambda == m.atoms()[1].lambda);

    const auto j = nlohmann::json::parse(to_json(m).dump());
    CHECK(j.at("atoms").at(0).at("lambda") == 0.3);

    const UnivariateStableParams p{1.2, -0.3, 1.4, 0.01};
    CHECK(params_from_json(to_json(p)) == p);

    CHECK_THROWS_AS((void)measure_from_json(nlohmann::json{{"alpha", 1.5}}), LoadError);
    CHECK_THROWS_AS((void)params_from_json(nlohmann::json{{"alpha", 3}, {"beta", 0}, {"gamma", 1}, {"delta", 0}}),
                    ParameterError);
}
