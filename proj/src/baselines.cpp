#include "mep/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace mep {

double cocomo_effort(const PowerLawModel& model, double size) {
    if (!(model.a > 0))
        throw std::invalid_argument("power-law coefficient a must be positive");
    if (!(size > 0))
        throw std::invalid_argument("size must be strictly positive, got " + std::to_string(size));
    return model.a * std::pow(size, model.b);
}

PowerLawModel fit_power_law(const Dataset& dataset, std::string_view size_column) {
    const std::vector<double> sizes = dataset.column(size_column);
    const std::vector<double> efforts = dataset.efforts();
    const std::size_t n = sizes.size();
    if (n < 2)
        throw std::runtime_error("power-law fit needs at least 2 cases, got " + std::to_string(n));

    std::vector<double> ls(n), le(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(sizes[i] > 0))
            throw std::runtime_error("power-law fit needs positive sizes; case " +
                                     std::to_string(i) + " has " + std::to_string(sizes[i]));
        if (!(efforts[i] > 0))
            throw std::runtime_error("power-law fit needs positive efforts; case " +
                                     std::to_string(i) + " has " + std::to_string(efforts[i]));
        ls[i] = std::log(sizes[i]);
        le[i] = std::log(efforts[i]);
    }

    double mean_s = 0, mean_e = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_s += ls[i];
        mean_e += le[i];
    }
    mean_s /= static_cast<double>(n);
    mean_e /= static_cast<double>(n);

    double var = 0, cov = 0;
    for (std::size_t i = 0; i < n; ++i) {
        var += (ls[i] - mean_s) * (ls[i] - mean_s);
        cov += (ls[i] - mean_s) * (le[i] - mean_e);
    }
    if (var == 0)
        throw std::runtime_error("power-law fit is degenerate: size column '" +
                                 std::string(size_column) + "' is constant");

    PowerLawModel model;
    model.b = cov / var;
    model.a = std::exp(mean_e - model.b * mean_s);
    return model;
}

ConstantModel mean_predictor(const Dataset& dataset) {
    if (dataset.cases.empty())
        throw std::invalid_argument("mean predictor over an empty dataset");
    double sum = 0;
    for (const auto& c : dataset.cases)
        sum += c.effort;
    return {sum / static_cast<double>(dataset.cases.size())};
}

std::vector<double> predict(const PowerLawModel& model, const Dataset& dataset,
                            std::string_view size_column) {
    const std::vector<double> sizes = dataset.column(size_column);
    std::vector<double> out;
    out.reserve(sizes.size());
    for (double s : sizes)
        out.push_back(cocomo_effort(model, s));
    return out;
}

std::vector<double> predict(const ConstantModel& model, const Dataset& dataset) {
    return std::vector<double>(dataset.cases.size(), model.value);
}

double prediction_fitness(const Dataset& dataset, std::span<const double> predictions,
                          Metric metric) {
    const std::vector<double> targets = dataset.efforts();
    return expression_fitness(predictions, targets, metric);
}

} // namespace mep
