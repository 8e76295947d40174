#include "tsens/harness/config.hpp"

#include "tsens/core/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string_view>

namespace tsens::harness {

namespace {

std::string trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream in(value);
    for (std::string item; std::getline(in, item, ',');) {
        auto t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

class LineError {
public:
    LineError(std::size_t line, std::string key) : line_(line), key_(std::move(key)) {}
    [[noreturn]] void fail(const std::string& message) const {
        throw ConfigError("config line " + std::to_string(line_) + " (" + key_ + "): " + message);
    }

private:
    std::size_t line_;
    std::string key_;
};

double to_double(const std::string& s, const LineError& where) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) where.fail("'" + s + "' is not a number");
    return v;
}

std::uint64_t to_count(const std::string& s, const LineError& where) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) where.fail("'" + s + "' is not a nonnegative integer");
    return v;
}

std::vector<double> to_doubles(const std::string& s, const LineError& where) {
    std::vector<double> out;
    for (const auto& item : split_list(s)) out.push_back(to_double(item, where));
    if (out.empty()) where.fail("expected at least one number");
    return out;
}

template <class Enum>
Enum to_enum(const std::string& s, const std::map<std::string, Enum>& table, const LineError& where) {
    auto it = table.find(s);
    if (it == table.end()) {
        std::string options;
        for (const auto& [k, v] : table) options += (options.empty() ? "" : ", ") + k;
        where.fail("'" + s + "' is not one of: " + options);
    }
    return it->second;
}

const std::map<std::string, ModelKind> kModelKinds{
    {"ar", ModelKind::Ar}, {"sarima", ModelKind::Sarima}, {"mlp", ModelKind::Mlp},
    {"svr", ModelKind::Svr}, {"perfect", ModelKind::Perfect}};

const std::map<std::string, CombinerKind> kCombinerKinds{
    {"simple_average", CombinerKind::SimpleAverage}, {"trimmed", CombinerKind::Trimmed},
    {"winsorized", CombinerKind::Winsorized},        {"median", CombinerKind::Median},
    {"error_based", CombinerKind::ErrorBased},       {"variance_based", CombinerKind::VarianceBased},
    {"nonlinear", CombinerKind::Nonlinear}};

void apply_rprop_key(models::TrainingConfig& t, const std::string& key, const std::string& value,
                     const LineError& where, bool& handled) {
    handled = true;
    if (key == "epochs") t.max_epochs = to_count(value, where);
    else if (key == "restarts") t.restarts = to_count(value, where);
    else if (key == "initial_step") t.rprop.initial_step = to_double(value, where);
    else if (key == "min_step") t.rprop.min_step = to_double(value, where);
    else if (key == "max_step") t.rprop.max_step = to_double(value, where);
    else if (key == "increase") t.rprop.increase = to_double(value, where);
    else if (key == "decrease") t.rprop.decrease = to_double(value, where);
    else if (key == "plateau_tolerance") t.plateau_tolerance = to_double(value, where);
    else if (key == "plateau_epochs") t.plateau_epochs = to_count(value, where);
    else handled = false;
}

}  // namespace

std::string to_string(ModelKind kind) {
    for (const auto& [name, k] : kModelKinds)
        if (k == kind) return name;
    return "unknown";
}

std::string to_string(CombinerKind kind) {
    for (const auto& [name, k] : kCombinerKinds)
        if (k == kind) return name;
    return "unknown";
}

void ExperimentConfig::set_seed(std::uint64_t base) {
    seed = base;
    mlp_training.seed = base;
    svr_training.seed = base + 1;
}

void ExperimentConfig::validate() const {
    if (dataset_path.empty()) throw ConfigError("[dataset] path is required");
    if (test_size == 0) throw ConfigError("[dataset] test_size must be positive");
    if (models.empty()) throw ConfigError("[models] list must name at least one model");
    for (std::size_t i = 0; i < models.size(); ++i)
        for (std::size_t j = i + 1; j < models.size(); ++j)
            if (models[i] == models[j]) throw ConfigError("model '" + to_string(models[i]) + "' is listed twice");
    if (ridge && *ridge < 0.0) throw ConfigError("ridge must be nonnegative");
    if (!(trim_percent >= 0.0 && trim_percent < 50.0)) throw ConfigError("trim_percent must lie in [0, 50)");
    mlp_training.validate();
    svr_training.validate();
}

ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
    ExperimentConfig cfg;
    cfg.mlp_training.hidden_grid.clear();
    std::vector<double> svr_c{1.0}, svr_sigma{1.0}, svr_eps{0.01};
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> sarima_period;

    std::string section;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto hash = raw.find('#');
        auto line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section header");
            }
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            static const std::vector<std::string> known{"dataset", "models", "ar", "sarima", "mlp",
                                                        "svr",     "combiners", "run", "report"};
            if (std::find(known.begin(), known.end(), section) == known.end()) {
                throw ConfigError("config line " + std::to_string(line_no) + ": unknown section [" + section + "]");
            }
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const auto key = trim(std::string_view(line).substr(0, eq));
        const auto value = trim(std::string_view(line).substr(eq + 1));
        const LineError where(line_no, section.empty() ? key : section + "." + key);
        bool handled = true;

        if (section == "dataset") {
            if (key == "name") cfg.dataset_name = value;
            else if (key == "path") cfg.dataset_path = base_dir / value;
            else if (key == "transform")
                cfg.transform = to_enum<DatasetTransform>(
                    value, {{"none", DatasetTransform::None}, {"log10", DatasetTransform::Log10}}, where);
            else if (key == "length") cfg.expected_length = to_count(value, where);
            else if (key == "period") cfg.period = to_count(value, where);
            else if (key == "test_size") cfg.test_size = to_count(value, where);
            else handled = false;
        } else if (section == "models") {
            if (key == "list") {
                cfg.models.clear();
                for (const auto& name : split_list(value)) cfg.models.push_back(to_enum(name, kModelKinds, where));
            } else {
                handled = false;
            }
        } else if (section == "ar") {
            if (key == "order") cfg.ar_order = to_count(value, where);
            else handled = false;
        } else if (section == "sarima") {
            if (key == "period") sarima_period = to_count(value, where);
            else handled = false;
        } else if (section == "mlp") {
            if (key == "layout") {
                auto parts = split_list(value);
                if (parts.size() != 3) where.fail("layout needs three counts: inputs, hidden, outputs");
                cfg.mlp_layout = {to_count(parts[0], where), to_count(parts[1], where), to_count(parts[2], where)};
            } else if (key == "hidden_grid") {
                cfg.mlp_training.hidden_grid.clear();
                for (const auto& item : split_list(value)) cfg.mlp_training.hidden_grid.push_back(to_count(item, where));
            } else if (key == "folds") {
                cfg.mlp_training.cv_folds = to_count(value, where);
            } else {
                apply_rprop_key(cfg.mlp_training, key, value, where, handled);
            }
        } else if (section == "svr") {
            if (key == "lag") cfg.svr_training.lag = to_count(value, where);
            else if (key == "C") svr_c = to_doubles(value, where);
            else if (key == "sigma") svr_sigma = to_doubles(value, where);
            else if (key == "epsilon") svr_eps = to_doubles(value, where);
            else if (key == "folds") cfg.svr_training.cv_folds = to_count(value, where);
            else handled = false;
        } else if (section == "combiners") {
            if (key == "list") {
                cfg.combiners.clear();
                for (const auto& name : split_list(value)) cfg.combiners.push_back(to_enum(name, kCombinerKinds, where));
            } else if (key == "trim_percent") {
                cfg.trim_percent = to_double(value, where);
            } else if (key == "winsor_count") {
                cfg.winsor_count = to_count(value, where);
            } else if (key == "error_metric") {
                cfg.error_metric = to_enum<combine::ErrorMetric>(
                    value, {{"mape", combine::ErrorMetric::Mape}, {"mse", combine::ErrorMetric::Mse},
                            {"arv", combine::ErrorMetric::Arv}},
                    where);
            } else {
                handled = false;
            }
        } else if (section == "run") {
            if (key == "seed") seed = to_count(value, where);
            else if (key == "mode")
                cfg.mode = to_enum<models::ForecastMode>(
                    value, {{"rolling", models::ForecastMode::Rolling}, {"iterated", models::ForecastMode::Iterated}},
                    where);
            else if (key == "stats")
                cfg.stats = to_enum<combine::StatsMode>(
                    value, {{"frozen", combine::StatsMode::Frozen}, {"recompute", combine::StatsMode::Recompute}},
                    where);
            else if (key == "standardization")
                cfg.standardization = to_enum<combine::Standardization>(
                    value,
                    {{"variance", combine::Standardization::Variance}, {"stddev", combine::Standardization::StdDev}},
                    where);
            else if (key == "ridge") cfg.ridge = to_double(value, where);
            else if (key == "arv")
                cfg.arv = to_enum<ArvDenominator>(value,
                                                  {{"forecast_deviation", ArvDenominator::ForecastDeviation},
                                                   {"actual_deviation", ArvDenominator::ActualDeviation}},
                                                  where);
            else if (key == "units")
                cfg.units = to_enum<MetricUnits>(
                    value, {{"working", MetricUnits::Working}, {"original", MetricUnits::Original}}, where);
            else if (key == "output") cfg.output_dir = base_dir / value;
            else if (key == "format")
                cfg.format = to_enum<ReportFormat>(value, {{"table", ReportFormat::Table}, {"csv", ReportFormat::Csv}},
                                                   where);
            else handled = false;
        } else if (section == "report") {
            if (key == "mse_footnote") cfg.mse_footnote = value;
            else handled = false;
        } else {
            handled = false;
        }
        if (!handled) where.fail("unknown key");
    }

    cfg.svr_training.svr_grid.clear();
    for (double c : svr_c)
        for (double s : svr_sigma)
            for (double e : svr_eps) cfg.svr_training.svr_grid.push_back({c, s, e});
    if (sarima_period) cfg.sarima = models::SarimaOrder::airline(*sarima_period);
    else if (cfg.period) cfg.sarima = models::SarimaOrder::airline(*cfg.period);
    if (cfg.dataset_name.empty()) cfg.dataset_name = cfg.dataset_path.stem().string();
    cfg.set_seed(seed.value_or(42));
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path.string() + "'");
    return parse_config(in, path.parent_path());
}

}  // namespace tsens::harness
