#include "mep/evaluate.hpp"

#include <array>
#include <stdexcept>

namespace mep {

void evaluate_all_into(std::vector<double>& values, const Chromosome& chromosome,
                       std::span<const double> terminal_values, const ProtectedArithmetic& arithmetic) {
    values.resize(chromosome.genes.size());
    std::array<double, 2> args{};
    for (std::size_t i = 0; i < chromosome.genes.size(); ++i) {
        const Gene& g = chromosome.genes[i];
        if (g.kind == Gene::Kind::terminal) {
            if (g.terminal >= terminal_values.size())
                throw std::invalid_argument("terminal index " + std::to_string(g.terminal) +
                                            " has no bound value");
            values[i] = terminal_values[g.terminal];
            continue;
        }
        const std::size_t n = g.args.size();
        if (n > args.size())
            throw std::invalid_argument("gene has more operands than any known function");
        for (std::size_t k = 0; k < n; ++k) {
            if (g.args[k] >= i)
                throw std::invalid_argument("invalid chromosome: operand does not point backwards");
            args[k] = values[g.args[k]];
        }
        values[i] = apply_function(g.function, std::span<const double>(args.data(), n), arithmetic);
    }
}

std::vector<double> evaluate_all(const Chromosome& chromosome, std::span<const double> terminal_values,
                                 const ProtectedArithmetic& arithmetic) {
    std::vector<double> values;
    evaluate_all_into(values, chromosome, terminal_values, arithmetic);
    return values;
}

std::vector<double> evaluate_all(const Chromosome& chromosome, const PrimitiveSet& primitives,
                                 const std::map<std::string, double>& fitness_case,
                                 const ProtectedArithmetic& arithmetic) {
    std::vector<double> bound(primitives.terminals.size());
    for (std::size_t i = 0; i < primitives.terminals.size(); ++i) {
        auto it = fitness_case.find(primitives.terminals[i]);
        if (it == fitness_case.end())
            throw std::invalid_argument("case does not bind variable '" + primitives.terminals[i] + "'");
        bound[i] = it->second;
    }
    return evaluate_all(chromosome, bound, arithmetic);
}

} // namespace mep
