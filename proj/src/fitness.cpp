#include "mep/fitness.hpp"

#include <cmath>
#include <stdexcept>

#include "mep/evaluate.hpp"

namespace mep {

std::string_view metric_name(Metric metric) {
    switch (metric) {
    case Metric::sum_abs_error: return "sum_abs_error";
    case Metric::mmre: return "mmre";
    }
    return "?";
}

Metric parse_metric(std::string_view name) {
    if (name == "sum_abs_error") return Metric::sum_abs_error;
    if (name == "mmre") return Metric::mmre;
    throw std::invalid_argument("unknown metric '" + std::string(name) +
                                "' (expected sum_abs_error or mmre)");
}

double expression_fitness(std::span<const double> outputs, std::span<const double> targets,
                          Metric metric) {
    if (outputs.size() != targets.size())
        throw std::invalid_argument("outputs and targets differ in length");
    if (outputs.empty())
        throw std::invalid_argument("fitness over zero cases");
    double sum = 0;
    for (std::size_t k = 0; k < outputs.size(); ++k) {
        if (metric == Metric::mmre) {
            if (!(targets[k] > 0))
                throw std::invalid_argument("mmre needs strictly positive targets, case " +
                                            std::to_string(k) + " has " + std::to_string(targets[k]));
            sum += std::fabs(outputs[k] - targets[k]) / targets[k];
        } else {
            sum += std::fabs(outputs[k] - targets[k]);
        }
    }
    return metric == Metric::mmre ? sum / static_cast<double>(outputs.size()) : sum;
}

FitnessReport chromosome_fitness(const Chromosome& chromosome, const Dataset& dataset,
                                 Metric metric, const ProtectedArithmetic& arithmetic) {
    if (dataset.cases.empty())
        throw std::invalid_argument("dataset '" + dataset.name + "' has no cases");
    if (chromosome.genes.empty())
        throw std::invalid_argument("empty chromosome");

    const std::size_t num_genes = chromosome.genes.size();
    const double n = static_cast<double>(dataset.cases.size());
    std::vector<double> error(num_genes, 0.0);
    std::vector<double> values;
    for (const DatasetCase& c : dataset.cases) {
        if (metric == Metric::mmre && !(c.effort > 0))
            throw std::invalid_argument("mmre needs strictly positive efforts, source row " +
                                        std::to_string(c.source_row));
        evaluate_all_into(values, chromosome, c.features, arithmetic);
        for (std::size_t i = 0; i < num_genes; ++i) {
            const double abs_err = std::fabs(values[i] - c.effort);
            error[i] += metric == Metric::mmre ? abs_err / c.effort : abs_err;
        }
    }

    FitnessReport report;
    report.metric = metric;
    report.per_gene_fitness = std::move(error);
    if (metric == Metric::mmre)
        for (double& e : report.per_gene_fitness)
            e /= n;
    report.best_gene_index = 0;
    for (std::size_t i = 1; i < num_genes; ++i)
        if (report.per_gene_fitness[i] < report.per_gene_fitness[report.best_gene_index])
            report.best_gene_index = i; // strict <: earliest gene wins ties
    report.chromosome_fitness = report.per_gene_fitness[report.best_gene_index];
    return report;
}

} // namespace mep
