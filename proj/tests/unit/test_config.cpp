#include "catch_amalgamated.hpp"

#include "tsens/core/errors.hpp"
#include "tsens/harness/config.hpp"
#include "tsens/harness/dataset.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace th = tsens::harness;
using Catch::Matchers::ContainsSubstring;

namespace {

const std::filesystem::path kConfigs(TSENS_CONFIG_DIR);

th::ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return th::parse_config(in, TSENS_DATA_DIR);
}

std::string error_of(const std::string& text) {
    try {
        (void)parse(text);
    } catch (const tsens::ConfigError& e) {
        return e.what();
    }
    return {};
}

const std::string kMinimal =
    "[dataset]\npath = lynx.csv\ntransform = log10\nlength = 114\ntest_size = 14\n"
    "[models]\nlist = ar, svr\n";

}  // namespace

TEST_CASE("bundled configs parse with the per-dataset model assignments") {
    auto lynx = th::load_config(kConfigs / "lynx.ini");
    CHECK(lynx.dataset_name == "lynx");
    CHECK(lynx.transform == th::DatasetTransform::Log10);
    CHECK(lynx.ar_order == 12);
    CHECK(lynx.mlp_layout == tsens::models::MlpLayout{7, 5, 1});
    CHECK(lynx.svr_training.lag == 12);
    CHECK(lynx.models == std::vector<th::ModelKind>{th::ModelKind::Ar, th::ModelKind::Mlp, th::ModelKind::Svr});
    CHECK(lynx.combiners.size() == 7);
    CHECK(std::filesystem::exists(lynx.dataset_path));

    auto sun = th::load_config(kConfigs / "sunspots.ini");
    CHECK(sun.ar_order == 9);
    CHECK(sun.mlp_layout == tsens::models::MlpLayout{4, 4, 1});
    CHECK(sun.svr_training.lag == 9);
    CHECK(sun.test_size == 67);

    auto air = th::load_config(kConfigs / "airline.ini");
    CHECK(air.models.front() == th::ModelKind::Sarima);
    CHECK(air.sarima.period == 12);
    CHECK(air.mlp_layout == tsens::models::MlpLayout{12, 1, 12});
    CHECK_FALSE(air.mse_footnote.empty());
}

TEST_CASE("SVR grid is the product of its axes") {
    auto cfg = parse(kMinimal + "[svr]\nlag = 3\nC = 1, 10\nsigma = 0.5, 1, 2\nepsilon = 0.01\n");
    REQUIRE(cfg.svr_training.svr_grid.size() == 6);
    CHECK(cfg.svr_training.svr_grid[0] == tsens::models::SvrHyper{1, 0.5, 0.01});
    CHECK(cfg.svr_training.svr_grid[5] == tsens::models::SvrHyper{10, 2, 0.01});
}

TEST_CASE("one seed drives every stochastic component") {
    auto cfg = parse(kMinimal + "[run]\nseed = 7\n");
    CHECK(cfg.seed == 7);
    CHECK(cfg.mlp_training.seed == 7);
    cfg.set_seed(100);
    CHECK(cfg.mlp_training.seed == 100);
    CHECK(cfg.svr_training.seed != cfg.mlp_training.seed);
}

TEST_CASE("run options") {
    auto cfg = parse(kMinimal +
                     "[run]\nmode = iterated\nstats = recompute\nstandardization = stddev\nridge = 1e-6\n"
                     "arv = actual_deviation\nunits = original\nformat = csv\n");
    CHECK(cfg.mode == tsens::models::ForecastMode::Iterated);
    CHECK(cfg.stats == tsens::combine::StatsMode::Recompute);
    CHECK(cfg.standardization == tsens::combine::Standardization::StdDev);
    CHECK(cfg.ridge == 1e-6);
    CHECK(cfg.arv == tsens::ArvDenominator::ActualDeviation);
    CHECK(cfg.units == th::MetricUnits::Original);
    CHECK(cfg.format == th::ReportFormat::Csv);
}

TEST_CASE("config errors name the line") {
    CHECK_THAT(error_of(kMinimal + "[bogus]\n"), ContainsSubstring("line 8"));
    CHECK_THAT(error_of(kMinimal + "[ar]\nwhatever = 1\n"), ContainsSubstring("line 9"));
    CHECK_THAT(error_of(kMinimal + "[ar]\norder = -2\n"), ContainsSubstring("line 9"));
    CHECK_THAT(error_of(kMinimal + "[run]\nmode = sideways\n"), ContainsSubstring("rolling"));
    CHECK_FALSE(error_of(kMinimal + "orphan line\n").empty());
    CHECK_FALSE(error_of("[dataset]\npath = lynx.csv\ntest_size = 14\n[models]\nlist = ar, gbm\n").empty());
    CHECK_FALSE(error_of("[dataset]\npath = lynx.csv\n[models]\nlist = ar\n").empty());
}

TEST_CASE("comments and blank lines are ignored") {
    auto cfg = parse("# header\n\n" + kMinimal + "  # indented comment\n[ar]\norder = 4\n");
    CHECK(cfg.ar_order == 4);
}

TEST_CASE("datasets load with their transform and length") {
    auto lynx = th::load_dataset(th::load_config(kConfigs / "lynx.ini"));
    CHECK(lynx.size() == 114);
    REQUIRE(lynx.transform_log().size() == 1);
    CHECK(lynx[0] == Catch::Approx(std::log10(269.0)));

    auto air = th::load_dataset(th::load_config(kConfigs / "airline.ini"));
    CHECK(air.size() == 144);
    CHECK(air.period() == 12u);
    CHECK(air.transform_log().empty());
}

TEST_CASE("length mismatch and malformed files are reported") {
    auto cfg = parse(kMinimal);
    cfg.expected_length = 100;
    CHECK_THROWS_AS(th::load_dataset(cfg), tsens::SizeError);

    auto bad = std::filesystem::temp_directory_path() / "tsens_bad_series.csv";
    {
        std::ofstream out(bad);
        out << "value\n1\n2\nthree\n";
    }
    cfg.expected_length.reset();
    cfg.dataset_path = bad;
    try {
        (void)th::load_dataset(cfg);
        FAIL("expected a parse error");
    } catch (const tsens::ParseError& e) {
        CHECK_THAT(std::string(e.what()), ContainsSubstring("line 4"));
    }
    std::filesystem::remove(bad);
}
