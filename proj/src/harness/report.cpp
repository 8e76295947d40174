#include "tsens/harness/report.hpp"

#include "tsens/combine/nonlinear.hpp"
#include "tsens/core/errors.hpp"
#include "tsens/harness/diagram.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace tsens::harness {

namespace {

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width, bool left) {
    if (s.size() >= width) return s;
    return left ? s + std::string(width - s.size(), ' ') : std::string(width - s.size(), ' ') + s;
}

double parse_field(const std::string& s, std::size_t line) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("report line " + std::to_string(line) + ": '" + s + "' is not a number");
    }
    return v;
}

}  // namespace

std::string render_table(const ExperimentReport& report) {
    std::ostringstream out;
    out << "dataset: " << report.dataset << " (transform " << report.transform << ")\n";
    out << "split: train " << report.train_len << ", validation " << report.validation_len << ", test "
        << report.test_len << '\n';
    out << "forecast mode: " << report.mode << ", ensemble stats: " << report.stats
        << ", standardization: " << report.standardization << ", seed: " << report.seed << "\n\n";

    const std::size_t name_w = 16, num_w = 14, sse_w = 16;
    out << pad("model", name_w, true) << pad("MAPE", num_w, false) << pad("MSE", num_w, false)
        << pad("ARV", num_w, false) << pad("validation SSE", sse_w, false) << '\n';
    out << std::string(name_w + 3 * num_w + sse_w, '-') << '\n';
    auto row = [&](const std::string& name, const ErrorReport& e, double vsse) {
        out << pad(name, name_w, true) << pad(fixed(e.mape, 6), num_w, false) << pad(fixed(e.mse, 6), num_w, false)
            << pad(fixed(e.arv, 6), num_w, false) << pad(fixed(vsse, 6), sse_w, false) << '\n';
    };
    for (const auto& m : report.models) row(m.name, m.test, m.validation_sse);
    if (!report.combiners.empty()) out << std::string(name_w + 3 * num_w + sse_w, '-') << '\n';
    for (const auto& c : report.combiners) {
        if (c.ok) row(c.name, c.test, c.validation_sse);
        else out << pad(c.name, name_w, true) << "failed: " << c.error << '\n';
    }
    if (report.ensemble) {
        const auto& w = *report.ensemble;
        out << "\nensemble weights: w0 = " << exact(w.intercept);
        for (std::size_t i = 0; i < w.linear.size(); ++i) out << ", w." << w.model_names[i] << " = " << exact(w.linear[i]);
        for (std::size_t j = 0; j < w.cross.size(); ++j) {
            out << ", theta." << w.model_names[w.pairs[j].first] << ':' << w.model_names[w.pairs[j].second] << " = "
                << exact(w.cross[j]);
        }
        out << "\nensemble diagnostics: validation SSE = " << exact(w.validation_sse)
            << ", solver residual = " << exact(w.solver_residual)
            << ", ridge = " << (w.ridge_applied ? exact(w.ridge) : std::string("none")) << '\n';
    }
    if (!report.mse_footnote.empty()) out << "\nnote: " << report.mse_footnote << '\n';
    return out.str();
}

std::string render_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "model,MAPE,MSE,ARV\n";
    auto row = [&](const std::string& name, const ErrorReport& e) {
        out << name << ',' << exact(e.mape) << ',' << exact(e.mse) << ',' << exact(e.arv) << '\n';
    };
    for (const auto& m : report.models) row(m.name, m.test);
    for (const auto& c : report.combiners) {
        if (c.ok) row(c.name, c.test);
    }
    for (const auto& c : report.combiners) {
        if (!c.ok) out << "# failed: " << c.name << ": " << c.error << '\n';
    }
    if (!report.mse_footnote.empty()) out << "# note: " << report.mse_footnote << '\n';
    return out.str();
}

void emit_report(const ExperimentReport& report, ReportFormat format, const std::filesystem::path& path) {
    write_file_atomic(path, format == ReportFormat::Csv ? render_csv(report) : render_table(report));
}

std::vector<CsvReportRow> parse_report_csv(std::istream& in) {
    std::vector<CsvReportRow> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        if (!header) {
            if (line != "model,MAPE,MSE,ARV") throw ParseError("report CSV has an unexpected header: " + line);
            header = true;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
        if (fields.size() != 4) throw ParseError("report line " + std::to_string(line_no) + " needs 4 fields");
        rows.push_back({fields[0],
                        {parse_field(fields[1], line_no), parse_field(fields[2], line_no), parse_field(fields[3], line_no)}});
    }
    if (!header) throw ParseError("report CSV has no header");
    return rows;
}

std::vector<std::filesystem::path> write_outputs(const ExperimentReport& report, const ExperimentConfig& config) {
    const auto dir = config.output_dir;
    const auto base = report.dataset;
    std::vector<std::filesystem::path> written;

    auto report_path = dir / (base + (config.format == ReportFormat::Csv ? "_report.csv" : "_report.txt"));
    emit_report(report, config.format, report_path);
    written.push_back(report_path);

    std::string params;
    for (const auto& m : report.models) params += "[" + m.name + "]\n" + m.parameters + "\n";
    auto params_path = dir / (base + "_models.txt");
    write_file_atomic(params_path, params);
    written.push_back(params_path);

    if (report.ensemble) {
        auto weights_path = dir / (base + "_weights.txt");
        write_file_atomic(weights_path, combine::dump(*report.ensemble));
        written.push_back(weights_path);
    }

    std::vector<NamedSeries> lines;
    for (const auto& c : report.combiners) {
        if (c.ok && c.name == to_string(CombinerKind::Nonlinear)) lines.push_back({c.name, c.test_forecast});
    }
    if (lines.empty()) {
        for (const auto& m : report.models) lines.push_back({m.name, m.test_forecast});
    }
    auto stem = dir / (base + "_forecast");
    emit_forecast_diagram(report.test_actual, lines, stem, "Forecast diagram: " + base);
    written.push_back(stem.string() + ".csv");
    written.push_back(stem.string() + ".svg");
    return written;
}

}  // namespace tsens::harness
