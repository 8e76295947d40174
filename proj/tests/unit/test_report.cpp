#include "catch_amalgamated.hpp"

#include "tsens/core/errors.hpp"
#include "tsens/harness/diagram.hpp"
#include "tsens/harness/experiment.hpp"
#include "tsens/harness/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace th = tsens::harness;
using Catch::Matchers::ContainsSubstring;

namespace {

th::ExperimentReport sample_report() {
    th::ExperimentReport r;
    r.dataset = "demo";
    r.transform = "none";
    r.train_len = 6;
    r.validation_len = 2;
    r.test_len = 2;
    r.seed = 42;
    r.mode = "rolling";
    r.stats = "frozen";
    r.standardization = "variance";
    r.test_actual = {1.0, 2.0};
    r.validation_actual = {1.5, 2.5};
    th::ModelResult m;
    m.name = "ar";
    m.test = {12.345678901234567, 0.1 + 0.2, 1.0 / 3.0};
    m.test_forecast = {1.1, 2.2};
    r.models.push_back(m);
    m.name = "svr";
    m.test = {7.0, 2.5e-7, 123456.789};
    r.models.push_back(m);
    th::CombinerResult c;
    c.name = "simple_average";
    c.ok = true;
    c.test = {3.25, 0.0625, 0.5};
    r.combiners.push_back(c);
    c.name = "variance_based";
    c.ok = false;
    c.error = "forecast columns are collinear";
    r.combiners.push_back(c);
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("CSV report round trips every metric exactly") {
    auto report = sample_report();
    auto csv = th::render_csv(report);
    CHECK(csv.rfind("model,MAPE,MSE,ARV\n", 0) == 0);
    std::istringstream in(csv);
    auto rows = th::parse_report_csv(in);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].model == "ar");
    CHECK(rows[0].errors == report.models[0].test);
    CHECK(rows[1].errors == report.models[1].test);
    CHECK(rows[2].model == "simple_average");
    CHECK(rows[2].errors == report.combiners[0].test);
    CHECK_THAT(csv, ContainsSubstring("# failed: variance_based: forecast columns are collinear"));
}

TEST_CASE("footnote appears in both formats") {
    auto report = sample_report();
    report.mse_footnote = "MSE is raw; divide by 1e4 for the scaled convention";
    CHECK_THAT(th::render_table(report), ContainsSubstring("note: MSE is raw"));
    CHECK_THAT(th::render_csv(report), ContainsSubstring("# note: MSE is raw"));
}

TEST_CASE("empty combiner list leaves only the model rows") {
    auto report = sample_report();
    report.combiners.clear();
    std::istringstream in(th::render_csv(report));
    CHECK(th::parse_report_csv(in).size() == 2);
    auto table = th::render_table(report);
    CHECK_THAT(table, ContainsSubstring("ar"));
    CHECK(table.find("simple_average") == std::string::npos);
}

TEST_CASE("table lists models, combiners and failures") {
    auto table = th::render_table(sample_report());
    CHECK_THAT(table, ContainsSubstring("12.345679"));
    CHECK_THAT(table, ContainsSubstring("simple_average"));
    CHECK_THAT(table, ContainsSubstring("variance_based"));
    CHECK_THAT(table, ContainsSubstring("collinear"));
}

TEST_CASE("emit_report writes atomically and fails loudly on a bad path") {
    auto dir = std::filesystem::temp_directory_path() / "tsens_report_test";
    std::filesystem::create_directories(dir);
    auto path = dir / "r.csv";
    th::emit_report(sample_report(), th::ReportFormat::Csv, path);
    CHECK(slurp(path) == th::render_csv(sample_report()));
    for (const auto& e : std::filesystem::directory_iterator(dir)) CHECK(e.path().filename() == "r.csv");
    auto blocker = dir / "plain_file";
    std::ofstream(blocker) << "x";
    CHECK_THROWS_AS(th::emit_report(sample_report(), th::ReportFormat::Table, blocker / "r.txt"), tsens::IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("malformed report CSV") {
    std::istringstream in("model,MAPE,MSE,ARV\nar,1,2\n");
    CHECK_THROWS_AS(th::parse_report_csv(in), tsens::ParseError);
    std::istringstream bad_number("model,MAPE,MSE,ARV\nar,1,x,3\n");
    CHECK_THROWS_AS(th::parse_report_csv(bad_number), tsens::ParseError);
}

TEST_CASE("diagram CSV has one row per point per series") {
    std::vector<double> actual(14);
    std::vector<th::NamedSeries> series{{"nonlinear", std::vector<double>(14)}};
    for (std::size_t i = 0; i < 14; ++i) {
        actual[i] = 3.0 + 0.1 * static_cast<double>(i);
        series[0].values[i] = actual[i] + 0.05;
    }
    auto csv = th::render_diagram_csv(actual, series);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "index,series,value");
    std::size_t rows = 0;
    while (std::getline(in, line)) rows += !line.empty();
    CHECK(rows == 28);
    CHECK_THAT(csv, ContainsSubstring("0,actual,3\n"));
}

TEST_CASE("diagram SVG has one polyline per series and is deterministic") {
    std::vector<double> actual{1, 3, 2, 5};
    std::vector<th::NamedSeries> series{{"ar", {1.5, 2.5, 2.5, 4}}, {"nonlinear", {1, 2.9, 2.1, 4.8}}};
    auto svg = th::render_diagram_svg(actual, series, "demo");
    CHECK(count(svg, "<polyline") == 3);
    CHECK_THAT(svg, ContainsSubstring("data-series=\"nonlinear\""));
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg == th::render_diagram_svg(actual, series, "demo"));
}

TEST_CASE("diagram length mismatch is a size error") {
    std::vector<double> actual{1, 2, 3};
    std::vector<th::NamedSeries> series{{"ar", {1, 2}}};
    auto stem = std::filesystem::temp_directory_path() / "tsens_diagram_test";
    CHECK_THROWS_AS(th::emit_forecast_diagram(actual, series, stem), tsens::SizeError);
}
