#include "mvstable/data.hpp"

#include "mvstable/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace mvstable {
namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\"");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\"");
    return s.substr(b, e - b + 1);
}

/// Splits one CSV line; double quotes group fields containing the delimiter.
std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') {
            quoted = !quoted;
        } else if (ch == delim && !quoted) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool parse_int(const std::string& s, int& v) {
    if (s.empty()) return false;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && p == s.data() + s.size();
}

bool valid_ymd(int y, int m, int d) {
    static constexpr std::array<int, 12> days = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (y < 1 || m < 1 || m > 12 || d < 1) return false;
    const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    return d <= (m == 2 && !leap ? 28 : days[m - 1]);
}

std::string format_ymd(int y, int m, int d) {
    std::ostringstream os;
    os << std::setfill('0') << std::setw(4) << y << '-' << std::setw(2) << m << '-' << std::setw(2) << d;
    return os.str();
}

/// ISO date, or "Mon DD, YYYY" as used by common crypto price dumps.
bool parse_date(const std::string& text, std::string& iso) {
    int y = 0, m = 0, d = 0;
    if (text.size() >= 10 && text[4] == '-' && text[7] == '-') {
        if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) || !parse_int(text.substr(8, 2), d))
            return false;
        // Allow a trailing time component ("2017-03-01 00:00:00").
        if (text.size() > 10 && text[10] != ' ' && text[10] != 'T') return false;
    } else {
        static constexpr std::array<const char*, 12> names = {"jan", "feb", "mar", "apr", "may", "jun",
                                                              "jul", "aug", "sep", "oct", "nov", "dec"};
        std::istringstream is(text);
        std::string mon, day, year;
        if (!(is >> mon >> day >> year)) return false;
        if (!day.empty() && day.back() == ',') day.pop_back();
        mon = lower(mon.substr(0, 3));
        const auto it = std::find_if(names.begin(), names.end(), [&](const char* n) { return mon == n; });
        if (it == names.end()) return false;
        m = static_cast<int>(it - names.begin()) + 1;
        if (!parse_int(day, d) || !parse_int(year, y)) return false;
    }
    if (!valid_ymd(y, m, d)) return false;
    iso = format_ymd(y, m, d);
    return true;
}

bool parse_double(std::string s, double& v) {
    s.erase(std::remove(s.begin(), s.end(), ','), s.end());  // thousands separators
    if (s.empty()) return false;
    char* end = nullptr;
    v = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(v);
}

}  // namespace

std::vector<double> ReturnMatrix::column(std::size_t k) const {
    if (k >= cols()) throw ParameterError("column index out of range");
    std::vector<double> out(rows());
    for (std::size_t i = 0; i < rows(); ++i) out[i] = values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
    return out;
}

ReturnMatrix ReturnMatrix::from_values(Eigen::MatrixXd values) {
    ReturnMatrix r;
    for (Eigen::Index k = 0; k < values.cols(); ++k) r.assets.push_back("x" + std::to_string(k + 1));
    r.values = std::move(values);
    return r;
}

PriceSeries parse_prices(std::istream& in, const CsvFormat& format, std::string asset) {
    std::string line;
    if (!std::getline(in, line) || trim(line).empty()) throw LoadError("missing header row");
    const auto header = split(line, format.delimiter);
    const std::string want_date = lower(format.date_column);
    const std::string want_price = lower(format.price_column);
    std::ptrdiff_t date_col = -1;
    std::ptrdiff_t price_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string h = lower(header[i]);
        if (h == want_date) date_col = static_cast<std::ptrdiff_t>(i);
        if (h == want_price) price_col = static_cast<std::ptrdiff_t>(i);
    }
    if (date_col < 0 || price_col < 0)
        throw LoadError("header must contain columns '" + format.date_column + "' and '" + format.price_column + "'");

    std::map<std::string, std::pair<double, std::size_t>> rows;  // date -> (price, row number)
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto fields = split(line, format.delimiter);
        const std::string where = "row " + std::to_string(row);
        if (fields.size() <= static_cast<std::size_t>(std::max(date_col, price_col)))
            throw LoadError(where + ": too few fields");
        std::string iso;
        if (!parse_date(fields[static_cast<std::size_t>(date_col)], iso))
            throw LoadError(where + ": cannot parse date '" + fields[static_cast<std::size_t>(date_col)] + "'");
        double price = 0.0;
        if (!parse_double(fields[static_cast<std::size_t>(price_col)], price))
            throw LoadError(where + ": cannot parse price '" + fields[static_cast<std::size_t>(price_col)] + "'");
        if (!(price > 0.0)) throw LoadError(where + ": price must be positive");
        const auto [it, inserted] = rows.emplace(iso, std::make_pair(price, row));
        if (!inserted)
            throw LoadError(where + ": duplicate date " + iso + " (first seen in row " + std::to_string(it->second.second) + ")");
    }
    PriceSeries s;
    s.asset = std::move(asset);
    for (const auto& [date, value] : rows) {
        s.dates.push_back(date);
        s.prices.push_back(value.first);
    }
    return s;
}

PriceSeries load_prices(const std::filesystem::path& path, const CsvFormat& format, std::string asset) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + path.string());
    if (asset.empty()) asset = path.stem().string();
    try {
        return parse_prices(in, format, std::move(asset));
    } catch (const LoadError& e) {
        throw LoadError(path.string() + ": " + e.what());
    }
}

ReturnMatrix logreturns(const PriceSeries& s) {
    if (s.prices.size() < 2) throw ParameterError("logreturns need at least two prices");
    if (s.dates.size() != s.prices.size()) throw ParameterError("price series has mismatched dates and prices");
    ReturnMatrix r;
    r.assets = {s.asset};
    r.values.resize(static_cast<Eigen::Index>(s.prices.size() - 1), 1);
    for (std::size_t t = 1; t < s.prices.size(); ++t) {
        r.dates.push_back(s.dates[t]);
        r.values(static_cast<Eigen::Index>(t - 1), 0) = 100.0 * std::log(s.prices[t] / s.prices[t - 1]);
    }
    return r;
}

ReturnMatrix align(const std::vector<PriceSeries>& series) {
    if (series.size() < 2) throw ParameterError("align needs at least two series");
    std::vector<std::string> common = series.front().dates;
    for (std::size_t k = 1; k < series.size(); ++k) {
        std::vector<std::string> next;
        std::set_intersection(common.begin(), common.end(), series[k].dates.begin(), series[k].dates.end(),
                              std::back_inserter(next));
        common = std::move(next);
    }
    if (common.size() < 2) throw LoadError("series share fewer than two dates; nothing to align");

    ReturnMatrix r;
    r.dates.assign(common.begin() + 1, common.end());
    r.values.resize(static_cast<Eigen::Index>(common.size() - 1), static_cast<Eigen::Index>(series.size()));
    for (std::size_t k = 0; k < series.size(); ++k) {
        const PriceSeries& s = series[k];
        r.assets.push_back(s.asset.empty() ? "x" + std::to_string(k + 1) : s.asset);
        std::size_t pos = 0;
        double prev = 0.0;
        for (std::size_t t = 0; t < common.size(); ++t) {
            while (s.dates[pos] != common[t]) ++pos;
            if (t > 0)
                r.values(static_cast<Eigen::Index>(t - 1), static_cast<Eigen::Index>(k)) = 100.0 * std::log(s.prices[pos] / prev);
            prev = s.prices[pos];
        }
    }
    return r;
}

std::vector<std::size_t> window_starts(std::size_t m, std::size_t count, std::size_t width, std::size_t stride) {
    if (count == 0) throw ConfigError("window count must be positive");
    if (width == 0 || width > m)
        throw ConfigError("window width " + std::to_string(width) + " does not fit " + std::to_string(m) + " rows");
    std::vector<std::size_t> starts(count);
    if (stride == 0) {
        if (count > 1) {
            stride = (m - width) / (count - 1);
            if (stride == 0) throw ConfigError("too many windows for the available rows");
        }
        for (std::size_t i = 0; i < count; ++i) starts[i] = i * stride;
        starts.back() = m - width;
    } else {
        if ((count - 1) * stride + width > m)
            throw ConfigError("window geometry needs " + std::to_string((count - 1) * stride + width) + " rows, have " +
                              std::to_string(m));
        for (std::size_t i = 0; i < count; ++i) starts[i] = i * stride;
    }
    return starts;
}

std::vector<ReturnMatrix> windows(const ReturnMatrix& r, std::size_t count, std::size_t width, std::size_t stride) {
    std::vector<ReturnMatrix> out;
    for (std::size_t start : window_starts(r.rows(), count, width, stride)) {
        ReturnMatrix w;
        w.assets = r.assets;
        if (!r.dates.empty()) w.dates.assign(r.dates.begin() + static_cast<std::ptrdiff_t>(start),
                                             r.dates.begin() + static_cast<std::ptrdiff_t>(start + width));
        w.values = r.values.middleRows(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(width));
        out.push_back(std::move(w));
    }
    return out;
}

void write_csv(std::ostream& out, const ReturnMatrix& r) {
    const bool dated = !r.dates.empty();
    if (dated) out << "date";
    for (std::size_t k = 0; k < r.cols(); ++k) out << (dated || k > 0 ? "," : "") << r.assets.at(k);
    out << '\n';
    out << std::setprecision(17);
    for (std::size_t i = 0; i < r.rows(); ++i) {
        if (dated) out << r.dates[i];
        for (std::size_t k = 0; k < r.cols(); ++k)
            out << (dated || k > 0 ? "," : "") << r.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        out << '\n';
    }
}

ReturnMatrix read_returns_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw LoadError(path.string() + ": missing header row");
    auto header = split(line, ',');
    const bool dated = !header.empty() && lower(header.front()) == "date";
    if (dated) header.erase(header.begin());
    if (header.empty()) throw LoadError(path.string() + ": no value columns");
    ReturnMatrix r;
    r.assets = header;
    std::vector<double> flat;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto fields = split(line, ',');
        if (dated) {
            r.dates.push_back(fields.front());
            fields.erase(fields.begin());
        }
        if (fields.size() != header.size())
            throw LoadError(path.string() + ": row " + std::to_string(row) + " has the wrong number of fields");
        for (const auto& f : fields) {
            double v = 0.0;
            if (!parse_double(f, v))
                throw LoadError(path.string() + ": row " + std::to_string(row) + ": cannot parse '" + f + "'");
            flat.push_back(v);
        }
    }
    const auto m = static_cast<Eigen::Index>(flat.size() / header.size());
    r.values = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        flat.data(), m, static_cast<Eigen::Index>(header.size()));
    return r;
}

}  // namespace mvstable
