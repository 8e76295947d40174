#include "tsens/harness/dataset.hpp"

#include "tsens/core/csv.hpp"
#include "tsens/core/errors.hpp"
#include "tsens/core/transforms.hpp"

namespace tsens::harness {

TimeSeries load_dataset(const ExperimentConfig& config) {
    auto values = read_series_csv(config.dataset_path);
    if (config.expected_length && values.size() != *config.expected_length) {
        throw SizeError("dataset '" + config.dataset_path.string() + "' has " + std::to_string(values.size()) +
                        " observations, config expects " + std::to_string(*config.expected_length));
    }
    TimeSeries series(std::move(values), config.dataset_name, config.period);
    if (config.transform == DatasetTransform::Log10) series = apply_transform(series, TransformKind::log10());
    return series;
}

}  // namespace tsens::harness
