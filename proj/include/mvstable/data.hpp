#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mvstable {

/// Daily closing prices of one asset. Dates are ISO-8601 (YYYY-MM-DD)
/// and strictly increasing; prices are positive.
struct PriceSeries {
    std::string asset;
    std::vector<std::string> dates;
    std::vector<double> prices;
};

/// m x d matrix of percent logreturns. `dates` is either empty (simulated
/// data) or has one entry per row.
struct ReturnMatrix {
    std::vector<std::string> dates;
    std::vector<std::string> assets;
    Eigen::MatrixXd values;

    [[nodiscard]] std::size_t rows() const { return static_cast<std::size_t>(values.rows()); }
    [[nodiscard]] std::size_t cols() const { return static_cast<std::size_t>(values.cols()); }
    [[nodiscard]] std::vector<double> column(std::size_t k) const;

    /// Wraps an undated matrix; assets are named x1..xd.
    static ReturnMatrix from_values(Eigen::MatrixXd values);
};

struct CsvFormat {
    std::string date_column = "date";
    std::string price_column = "close";
    char delimiter = ',';
};

/// Reads a CSV with a header row. Column names match case-insensitively;
/// dates may be ISO (2017-03-01) or "Mar 01, 2017". Rows may come in any
/// order and are sorted by date. Throws LoadError naming the offending row
/// (1-based, header = row 1).
[[nodiscard]] PriceSeries load_prices(const std::filesystem::path& path, const CsvFormat& format = {},
                                      std::string asset = {});
[[nodiscard]] PriceSeries parse_prices(std::istream& in, const CsvFormat& format = {}, std::string asset = {});

/// r_t = 100 ln(P_t / P_{t-1}), dated at t.
[[nodiscard]] ReturnMatrix logreturns(const PriceSeries& s);

/// Inner join of the price series on date, then logreturns per column.
[[nodiscard]] ReturnMatrix align(const std::vector<PriceSeries>& series);

/// `count` windows of `width` rows, oldest first. stride = 0 selects the
/// default geometry floor((m - width) / (count - 1)) with the last window
/// anchored at the final row. An explicit stride places window i at row
/// i * stride.
[[nodiscard]] std::vector<ReturnMatrix> windows(const ReturnMatrix& r, std::size_t count, std::size_t width,
                                                std::size_t stride = 0);

/// Start rows (0-based) of the windows() geometry.
[[nodiscard]] std::vector<std::size_t> window_starts(std::size_t m, std::size_t count, std::size_t width,
                                                     std::size_t stride = 0);

/// CSV with a leading date column when dates are present.
void write_csv(std::ostream& out, const ReturnMatrix& r);
[[nodiscard]] ReturnMatrix read_returns_csv(const std::filesystem::path& path);

}  // namespace mvstable
