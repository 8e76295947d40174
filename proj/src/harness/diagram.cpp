#include "tsens/harness/diagram.hpp"

#include "tsens/core/errors.hpp"
#include "tsens/harness/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace tsens::harness {

namespace {

std::string num(double v, const char* fmt = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

void check_lengths(std::span<const double> actual, std::span<const NamedSeries> forecasts) {
    for (const auto& f : forecasts) {
        if (f.values.size() != actual.size()) {
            throw SizeError("forecast '" + f.name + "' has " + std::to_string(f.values.size()) +
                            " values but the actual series has " + std::to_string(actual.size()));
        }
    }
}

constexpr std::array<const char*, 8> kPalette{"#000000", "#d62728", "#1f77b4", "#2ca02c",
                                              "#ff7f0e", "#9467bd", "#8c564b", "#e377c2"};

}  // namespace

std::string render_diagram_csv(std::span<const double> actual, std::span<const NamedSeries> forecasts) {
    check_lengths(actual, forecasts);
    std::ostringstream out;
    out << "index,series,value\n";
    for (std::size_t k = 0; k < actual.size(); ++k) out << k << ",actual," << num(actual[k]) << '\n';
    for (const auto& f : forecasts) {
        for (std::size_t k = 0; k < f.values.size(); ++k) out << k << ',' << f.name << ',' << num(f.values[k]) << '\n';
    }
    return out.str();
}

std::string render_diagram_svg(std::span<const double> actual, std::span<const NamedSeries> forecasts,
                               const std::string& title) {
    check_lengths(actual, forecasts);
    constexpr double width = 800, height = 420, left = 70, right = 170, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double lo = actual.empty() ? 0.0 : actual.front();
    double hi = lo;
    auto widen = [&](std::span<const double> v) {
        for (double x : v) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    };
    widen(actual);
    for (const auto& f : forecasts) widen(f.values);
    if (hi <= lo) {
        hi = lo + 1.0;
        lo -= 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
    const double steps = actual.size() > 1 ? static_cast<double>(actual.size() - 1) : 1.0;
    auto px = [&](std::size_t k) { return left + plot_w * static_cast<double>(k) / steps; };
    auto py = [&](double v) { return top + plot_h * (hi - v) / (hi - lo); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    out << "<text x=\"" << left << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">" << escape_xml(title)
        << "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"#888888\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        double v = lo + (hi - lo) * t / 4.0;
        out << "<text x=\"" << left - 6 << "\" y=\"" << num(py(v), "%.2f")
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" << num(v, "%.4g") << "</text>\n";
    }
    for (std::size_t k = 0; k < actual.size(); ++k) {
        out << "<text x=\"" << num(px(k), "%.2f") << "\" y=\"" << top + plot_h + 16
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << (k + 1) << "</text>\n";
    }

    auto polyline = [&](const std::string& name, std::span<const double> v, std::size_t color) {
        out << "<polyline data-series=\"" << escape_xml(name) << "\" fill=\"none\" stroke=\""
            << kPalette[color % kPalette.size()] << "\" stroke-width=\"2\" points=\"";
        for (std::size_t k = 0; k < v.size(); ++k) {
            out << (k ? " " : "") << num(px(k), "%.2f") << ',' << num(py(v[k]), "%.2f");
        }
        out << "\"/>\n";
        const double ly = top + 14.0 + 20.0 * static_cast<double>(color);
        const double lx = left + plot_w + 14.0;
        out << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly << "\" stroke=\""
            << kPalette[color % kPalette.size()] << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\" font-size=\"12\">"
            << escape_xml(name) << "</text>\n";
    };
    polyline("actual", actual, 0);
    for (std::size_t i = 0; i < forecasts.size(); ++i) polyline(forecasts[i].name, forecasts[i].values, i + 1);
    out << "</svg>\n";
    return out.str();
}

void emit_forecast_diagram(std::span<const double> actual, std::span<const NamedSeries> forecasts,
                           const std::filesystem::path& stem, const std::string& title) {
    auto csv = render_diagram_csv(actual, forecasts);
    auto svg = render_diagram_svg(actual, forecasts, title);
    auto csv_path = stem;
    csv_path += ".csv";
    auto svg_path = stem;
    svg_path += ".svg";
    write_file_atomic(csv_path, csv);
    write_file_atomic(svg_path, svg);
}

}  // namespace tsens::harness
