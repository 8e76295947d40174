#include "catch_amalgamated.hpp"

#include "tsens/core/csv.hpp"
#include "tsens/core/errors.hpp"

#include <filesystem>
#include <sstream>

TEST_CASE("plain numbers, header and blank lines") {
    std::istringstream in("value\n 1.5 \n\n2\n-3e2\r\n");
    auto v = tsens::read_series_csv(in);
    CHECK(v == std::vector<double>{1.5, 2.0, -300.0});
}

TEST_CASE("no header") {
    std::istringstream in("4\n5\n");
    CHECK(tsens::read_series_csv(in) == std::vector<double>{4.0, 5.0});
}

TEST_CASE("bad line names its line number") {
    std::istringstream in("value\n1\n2\nabc\n4\n");
    try {
        (void)tsens::read_series_csv(in);
        FAIL("expected a parse error");
    } catch (const tsens::ParseError& e) {
        CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("line 4"));
    }
}

TEST_CASE("trailing junk and a second header are rejected") {
    std::istringstream junk("1\n2x\n");
    CHECK_THROWS_AS(tsens::read_series_csv(junk), tsens::ParseError);
    std::istringstream two_headers("a\nb\n1\n");
    CHECK_THROWS_AS(tsens::read_series_csv(two_headers), tsens::ParseError);
    std::istringstream nan("1\nnan\n");
    CHECK_THROWS_AS(tsens::read_series_csv(nan), tsens::ParseError);
}

TEST_CASE("empty input and missing file") {
    std::istringstream empty("value\n\n");
    CHECK_THROWS_AS(tsens::read_series_csv(empty), tsens::ParseError);
    CHECK_THROWS_AS(tsens::read_series_csv(std::filesystem::path("/nonexistent/x.csv")), tsens::IoError);
}

TEST_CASE("bundled files parse") {
    std::filesystem::path dir(TSENS_DATA_DIR);
    CHECK(tsens::read_series_csv(dir / "lynx.csv").size() == 114);
    CHECK(tsens::read_series_csv(dir / "sunspots.csv").size() == 288);
    CHECK(tsens::read_series_csv(dir / "airline.csv").size() == 144);
}
