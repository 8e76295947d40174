#include "tsens/models/forecast.hpp"

#include "tsens/core/errors.hpp"

#include <algorithm>

namespace tsens::models {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<double> next_block(const FittedModel& model, std::span<const double> history) {
    return std::visit(overloaded{
                          [&](const ArModel& m) { return std::vector<double>{m.predict_next(history)}; },
                          [&](const SarimaModel& m) { return std::vector<double>{m.predict_next(history)}; },
                          [&](const MlpModel& m) { return m.predict_block(history); },
                          [&](const SvrModel& m) { return std::vector<double>{m.predict_next(history)}; },
                      },
                      model);
}

}  // namespace

std::size_t required_history(const FittedModel& model) {
    return std::visit(overloaded{
                          [](const ArModel& m) { return m.order; },
                          [](const SarimaModel& m) { return m.min_history(); },
                          [](const MlpModel& m) { return m.network.layout().inputs; },
                          [](const SvrModel& m) { return m.lag; },
                      },
                      model);
}

std::size_t block_size(const FittedModel& model) {
    if (const auto* mlp = std::get_if<MlpModel>(&model)) return mlp->network.layout().outputs;
    return 1;
}

std::vector<double> forecast(const FittedModel& model, const TimeSeries& history, std::size_t horizon,
                             ForecastMode mode, std::span<const double> realized) {
    if (horizon == 0) throw SizeError("forecast horizon must be at least 1");
    const std::size_t needed = required_history(model);
    if (history.size() < needed) {
        throw SizeError("forecast needs " + std::to_string(needed) + " observations of history, got " +
                        std::to_string(history.size()));
    }

    std::vector<double> path = history.data();
    path.reserve(path.size() + horizon);
    std::vector<double> out;
    out.reserve(horizon);
    while (out.size() < horizon) {
        auto block = next_block(model, path);
        const std::size_t start = out.size();
        const std::size_t take = std::min(block.size(), horizon - start);
        out.insert(out.end(), block.begin(), block.begin() + static_cast<std::ptrdiff_t>(take));
        if (out.size() == horizon) break;
        if (mode == ForecastMode::Rolling) {
            if (realized.size() < out.size()) {
                throw SizeError("rolling forecast needs " + std::to_string(out.size()) +
                                " realized values to continue, got " + std::to_string(realized.size()));
            }
            path.insert(path.end(), realized.begin() + static_cast<std::ptrdiff_t>(start),
                        realized.begin() + static_cast<std::ptrdiff_t>(out.size()));
        } else {
            path.insert(path.end(), block.begin(), block.begin() + static_cast<std::ptrdiff_t>(take));
        }
    }
    return out;
}

std::string dump(const FittedModel& model) {
    return std::visit([](const auto& m) { return dump(m); }, model);
}

}  // namespace tsens::models
