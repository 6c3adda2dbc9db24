#pragma once

#include <string_view>
#include <vector>

#include "mep/dataset.hpp"
#include "mep/fitness.hpp"

namespace mep {

// Classic effort power law: effort = a * size^b.
struct PowerLawModel {
    double a = 1; // > 0
    double b = 1;
};

double cocomo_effort(const PowerLawModel& model, double size); // size must be > 0

// Least-squares calibration in log space: ln E = ln a + b ln S. Needs at
// least two cases and non-constant ln S; sizes and efforts must be positive.
PowerLawModel fit_power_law(const Dataset& dataset, std::string_view size_column);

// Constant predictor: the arithmetic mean effort.
struct ConstantModel {
    double value = 0;
};

ConstantModel mean_predictor(const Dataset& dataset);

std::vector<double> predict(const PowerLawModel& model, const Dataset& dataset,
                            std::string_view size_column);
std::vector<double> predict(const ConstantModel& model, const Dataset& dataset);

// Error of a prediction vector against the dataset's efforts.
double prediction_fitness(const Dataset& dataset, std::span<const double> predictions,
                          Metric metric);

} // namespace mep
