// Command-line driver: `tsens run <config> [options]`.

#include "tsens/core/errors.hpp"
#include "tsens/harness/config.hpp"
#include "tsens/harness/experiment.hpp"
#include "tsens/harness/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct RunOptions {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
    std::optional<std::string> mode;
    std::optional<std::string> stats;
    std::optional<double> ridge;
};

int run(const RunOptions& opt) {
    using namespace tsens::harness;
    ExperimentConfig config;
    try {
        config = load_config(opt.config);
    } catch (const tsens::Error& e) {
        std::cerr << "error [config]: " << e.what() << '\n';
        return 1;
    }
    if (opt.out) config.output_dir = *opt.out;
    if (opt.seed) config.set_seed(*opt.seed);
    if (opt.format) config.format = *opt.format == "csv" ? ReportFormat::Csv : ReportFormat::Table;
    if (opt.mode) {
        config.mode = *opt.mode == "iterated" ? tsens::models::ForecastMode::Iterated
                                              : tsens::models::ForecastMode::Rolling;
    }
    if (opt.stats) {
        config.stats = *opt.stats == "recompute" ? tsens::combine::StatsMode::Recompute
                                                 : tsens::combine::StatsMode::Frozen;
    }
    if (opt.ridge) config.ridge = *opt.ridge;

    ExperimentReport report;
    try {
        report = run_experiment(config);
    } catch (const StageError& e) {
        std::cerr << "error [" << e.stage() << "]: " << e.what() << '\n';
        return 1;
    } catch (const tsens::Error& e) {
        std::cerr << "error [run]: " << e.what() << '\n';
        return 1;
    }

    try {
        for (const auto& path : write_outputs(report, config)) std::cerr << "wrote " << path.string() << '\n';
    } catch (const tsens::Error& e) {
        std::cerr << "error [emit]: " << e.what() << '\n';
        return 1;
    }
    for (const auto& t : report.timings) {
        std::fprintf(stderr, "time %-24s %9.3f s\n", t.stage.c_str(), t.seconds);
    }
    for (const auto& c : report.combiners) {
        if (!c.ok) std::cerr << "warning [combine:" << c.name << "]: " << c.error << '\n';
    }
    std::cout << (config.format == ReportFormat::Csv ? render_csv(report) : render_table(report));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Forecast combination experiments: base models, linear combiners and the nonlinear ensemble"};
    app.require_subcommand(1);

    RunOptions opt;
    auto* run_cmd = app.add_subcommand("run", "Run one experiment described by a config file");
    run_cmd->add_option("config", opt.config, "Experiment config (key = value with [section] headers)")
        ->required()
        ->check(CLI::ExistingFile);
    run_cmd->add_option("--out", opt.out, "Output directory (overrides [run] output)");
    run_cmd->add_option("--seed", opt.seed, "Base random seed for every stochastic model");
    run_cmd->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"csv", "table"}));
    run_cmd->add_option("--mode", opt.mode, "Forecast mode")->check(CLI::IsMember({"rolling", "iterated"}));
    run_cmd->add_option("--stats", opt.stats, "Ensemble standardization statistics at test time")
        ->check(CLI::IsMember({"frozen", "recompute"}));
    run_cmd->add_option("--ridge", opt.ridge, "Ridge added to both inverted blocks of the ensemble solve")
        ->check(CLI::NonNegativeNumber);

    CLI11_PARSE(app, argc, argv);
    return run(opt);
}
