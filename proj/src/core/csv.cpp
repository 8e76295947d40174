#include "tsens/core/csv.hpp"

#include "tsens/core/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>

namespace tsens {

namespace {

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n\f\v";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

std::vector<double> read_series_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto field = trim(line);
        if (field.empty()) continue;
        auto v = parse_double(field);
        if (!v) {
            if (!seen_content) {
                seen_content = true;  // header
                continue;
            }
            throw ParseError("line " + std::to_string(line_no) + ": '" + std::string(field) +
                             "' is not a number");
        }
        seen_content = true;
        values.push_back(*v);
    }
    if (values.empty()) throw ParseError("no observations after " + std::to_string(line_no) + " lines");
    return values;
}

std::vector<double> read_series_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    try {
        return read_series_csv(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace tsens
