#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "mep/arithmetic.hpp"
#include "mep/chromosome.hpp"
#include "mep/dataset.hpp"

namespace mep {

// Error measures, both minimized:
//   sum_abs_error : sum over cases of |predicted - actual|
//   mmre          : mean magnitude of relative error,
//                   (1/n) * sum |predicted - actual| / actual; needs actual > 0
enum class Metric { sum_abs_error, mmre };

std::string_view metric_name(Metric metric);
Metric parse_metric(std::string_view name); // throws on unknown names

double expression_fitness(std::span<const double> outputs, std::span<const double> targets,
                          Metric metric);

// Per-gene fitness of every expression a chromosome encodes, plus the
// chromosome fitness: the minimum over genes, earliest gene winning ties.
struct FitnessReport {
    std::vector<double> per_gene_fitness;
    std::size_t best_gene_index = 0;
    double chromosome_fitness = 0;
    Metric metric = Metric::sum_abs_error;
};

// Evaluates all genes once per case (cases accumulated in file order, so
// results are bit-reproducible). Gene terminal indices refer to the
// dataset's feature columns.
FitnessReport chromosome_fitness(const Chromosome& chromosome, const Dataset& dataset,
                                 Metric metric, const ProtectedArithmetic& arithmetic = {});

} // namespace mep
