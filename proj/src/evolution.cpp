#include "mep/evolution.hpp"

#include <algorithm>
#include <stdexcept>

namespace mep {

std::string_view crossover_kind_name(CrossoverKind kind) {
    switch (kind) {
    case CrossoverKind::one_point: return "one_point";
    case CrossoverKind::two_point: return "two_point";
    case CrossoverKind::uniform: return "uniform";
    }
    return "?";
}

CrossoverKind parse_crossover_kind(std::string_view name) {
    if (name == "one_point") return CrossoverKind::one_point;
    if (name == "two_point") return CrossoverKind::two_point;
    if (name == "uniform") return CrossoverKind::uniform;
    throw std::invalid_argument("unknown crossover kind '" + std::string(name) +
                                "' (expected one_point, two_point or uniform)");
}

std::size_t EvolutionParams::effective_steps_per_generation() const {
    if (steps_per_generation)
        return steps_per_generation;
    return std::max<std::size_t>(1, population_size / 2);
}

void EvolutionParams::check() const {
    auto probability = [](double p, const char* what) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
    };
    probability(crossover_rate, "crossover_rate");
    probability(mutation_rate, "mutation_rate");
    probability(function_probability, "function_probability");
    if (population_size < 2)
        throw std::invalid_argument("population_size must be at least 2");
    if (tournament_size < 1)
        throw std::invalid_argument("tournament_size must be at least 1");
    if (num_genes < 1)
        throw std::invalid_argument("num_genes must be at least 1");
}

std::size_t tournament_select(std::span<const double> fitnesses, std::size_t tournament_size,
                              RandomStream& rng) {
    if (fitnesses.empty())
        throw std::invalid_argument("tournament over an empty population");
    if (tournament_size < 1)
        throw std::invalid_argument("tournament size must be at least 1");
    std::size_t best = rng.uniform_index(fitnesses.size());
    for (std::size_t i = 1; i < tournament_size; ++i) {
        const std::size_t challenger = rng.uniform_index(fitnesses.size());
        if (fitnesses[challenger] < fitnesses[best])
            best = challenger;
    }
    return best;
}

namespace {

void require_equal_lengths(const Chromosome& a, const Chromosome& b) {
    if (a.genes.size() != b.genes.size())
        throw std::invalid_argument("crossover needs equal gene counts, got " +
                                    std::to_string(a.genes.size()) + " and " +
                                    std::to_string(b.genes.size()));
}

} // namespace

std::pair<Chromosome, Chromosome> crossover_one_point(const Chromosome& parent_a,
                                                      const Chromosome& parent_b, RandomStream& rng) {
    require_equal_lengths(parent_a, parent_b);
    const std::size_t num_genes = parent_a.genes.size();
    Chromosome o1 = parent_a, o2 = parent_b;
    if (num_genes < 2)
        return {o1, o2}; // no interior cut exists
    const std::size_t cut = 1 + rng.uniform_index(num_genes - 1); // [1, G)
    for (std::size_t i = cut; i < num_genes; ++i)
        std::swap(o1.genes[i], o2.genes[i]);
    return {o1, o2};
}

std::pair<Chromosome, Chromosome> crossover_two_point(const Chromosome& parent_a,
                                                      const Chromosome& parent_b, RandomStream& rng) {
    require_equal_lengths(parent_a, parent_b);
    const std::size_t num_genes = parent_a.genes.size();
    Chromosome o1 = parent_a, o2 = parent_b;
    if (num_genes < 3)
        return {o1, o2}; // no two distinct interior cuts exist
    std::size_t p = 1 + rng.uniform_index(num_genes - 1);
    std::size_t q = 1 + rng.uniform_index(num_genes - 1);
    while (q == p)
        q = 1 + rng.uniform_index(num_genes - 1);
    if (p > q)
        std::swap(p, q);
    for (std::size_t i = p; i < q; ++i)
        std::swap(o1.genes[i], o2.genes[i]);
    return {o1, o2};
}

std::pair<Chromosome, Chromosome> crossover_uniform_masked(const Chromosome& parent_a,
                                                           const Chromosome& parent_b,
                                                           const std::vector<bool>& swap_mask) {
    require_equal_lengths(parent_a, parent_b);
    if (swap_mask.size() != parent_a.genes.size())
        throw std::invalid_argument("swap mask length must match gene count");
    Chromosome o1 = parent_a, o2 = parent_b;
    for (std::size_t i = 0; i < swap_mask.size(); ++i)
        if (swap_mask[i])
            std::swap(o1.genes[i], o2.genes[i]);
    return {o1, o2};
}

std::pair<Chromosome, Chromosome> crossover_uniform(const Chromosome& parent_a,
                                                    const Chromosome& parent_b, RandomStream& rng) {
    require_equal_lengths(parent_a, parent_b);
    std::vector<bool> mask(parent_a.genes.size());
    for (std::size_t i = 0; i < mask.size(); ++i)
        mask[i] = rng.bernoulli(0.5);
    return crossover_uniform_masked(parent_a, parent_b, mask);
}

std::pair<Chromosome, Chromosome> crossover(CrossoverKind kind, const Chromosome& parent_a,
                                            const Chromosome& parent_b, RandomStream& rng) {
    switch (kind) {
    case CrossoverKind::one_point: return crossover_one_point(parent_a, parent_b, rng);
    case CrossoverKind::two_point: return crossover_two_point(parent_a, parent_b, rng);
    case CrossoverKind::uniform: return crossover_uniform(parent_a, parent_b, rng);
    }
    throw std::invalid_argument("unhandled crossover kind");
}

Chromosome mutate(const Chromosome& chromosome, double mutation_rate,
                  const PrimitiveSet& primitives, RandomStream& rng, double function_probability) {
    Chromosome out = chromosome;
    for (std::size_t i = 0; i < out.genes.size(); ++i) {
        if (!rng.bernoulli(mutation_rate))
            continue;
        if (i > 0 && !primitives.functions.empty() && rng.bernoulli(function_probability)) {
            FunctionSymbol f = primitives.functions[rng.uniform_index(primitives.functions.size())];
            std::vector<std::size_t> args(arity(f));
            for (auto& a : args)
                a = rng.uniform_index(i); // prior operands are ignored, fresh ones generated
            out.genes[i] = Gene::make_function(f, std::move(args));
        } else {
            out.genes[i] = Gene::make_terminal(rng.uniform_index(primitives.terminals.size()));
        }
    }
    return out;
}

namespace {

std::size_t worst_index(const Population& population) {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < population.size(); ++i)
        if (population[i].fitness > population[worst].fitness)
            worst = i;
    return worst;
}

std::size_t best_index(const Population& population) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i)
        if (population[i].fitness < population[best].fitness)
            best = i;
    return best;
}

} // namespace

StepLog evolve_step(Population& population, const EvolutionParams& params, const Dataset& dataset,
                    const PrimitiveSet& primitives, const ProtectedArithmetic& arithmetic,
                    RandomStream& rng, std::size_t& evaluation_count) {
    if (population.empty())
        throw std::invalid_argument("evolve_step over an empty population");

    std::vector<double> fitnesses;
    fitnesses.reserve(population.size());
    for (const auto& ind : population)
        fitnesses.push_back(ind.fitness);

    const std::size_t pa = tournament_select(fitnesses, params.tournament_size, rng);
    const std::size_t pb = tournament_select(fitnesses, params.tournament_size, rng);

    std::pair<Chromosome, Chromosome> offspring;
    if (rng.bernoulli(params.crossover_rate))
        offspring = crossover(params.crossover_kind, population[pa].chromosome,
                              population[pb].chromosome, rng);
    else
        offspring = {population[pa].chromosome, population[pb].chromosome};

    Chromosome c1 = mutate(offspring.first, params.mutation_rate, primitives, rng,
                           params.function_probability);
    Chromosome c2 = mutate(offspring.second, params.mutation_rate, primitives, rng,
                           params.function_probability);

    FitnessReport f1 = chromosome_fitness(c1, dataset, params.metric, arithmetic);
    FitnessReport f2 = chromosome_fitness(c2, dataset, params.metric, arithmetic);
    evaluation_count += 2;

    const bool first_better = f1.chromosome_fitness <= f2.chromosome_fitness;
    Individual best_offspring{first_better ? std::move(c1) : std::move(c2),
                              first_better ? f1.chromosome_fitness : f2.chromosome_fitness,
                              first_better ? f1.best_gene_index : f2.best_gene_index};

    StepLog log;
    const std::size_t worst = worst_index(population);
    if (best_offspring.fitness < population[worst].fitness) {
        population[worst] = std::move(best_offspring);
        log.replaced = true;
        log.replaced_index = worst;
    }
    log.best_fitness_after = population[best_index(population)].fitness;
    return log;
}

RunResult run(const EvolutionParams& params, const Dataset& dataset, const PrimitiveSet& primitives,
              const ProtectedArithmetic& arithmetic) {
    params.check();
    check_primitive_set(primitives);
    if (dataset.cases.empty())
        throw std::invalid_argument("cannot evolve against an empty dataset");

    RandomStream rng(params.seed);
    std::size_t evaluations = 0;

    Population population;
    population.reserve(params.population_size);
    for (std::size_t i = 0; i < params.population_size; ++i) {
        Chromosome c = random_chromosome(primitives, params.num_genes, rng,
                                         params.function_probability);
        FitnessReport report = chromosome_fitness(c, dataset, params.metric, arithmetic);
        ++evaluations;
        population.push_back({std::move(c), report.chromosome_fitness, report.best_gene_index});
    }

    RunResult result;
    result.seed = params.seed;
    result.params_echo = params;
    result.initial_best_fitness = population[best_index(population)].fitness;

    const std::size_t steps = params.effective_steps_per_generation();
    result.fitness_trace.reserve(params.generations);
    result.replacements_per_generation.reserve(params.generations);
    for (std::size_t g = 0; g < params.generations; ++g) {
        std::size_t replacements = 0;
        double best_after = result.initial_best_fitness;
        for (std::size_t s = 0; s < steps; ++s) {
            StepLog log = evolve_step(population, params, dataset, primitives, arithmetic, rng,
                                      evaluations);
            replacements += log.replaced ? 1 : 0;
            best_after = log.best_fitness_after;
        }
        result.fitness_trace.push_back(best_after);
        result.replacements_per_generation.push_back(replacements);
    }

    const std::size_t best = best_index(population);
    result.best_chromosome = population[best].chromosome;
    result.best_fitness = population[best].fitness;
    result.best_gene_index = population[best].best_gene_index;
    result.best_expression = decode(result.best_chromosome, primitives, result.best_gene_index);
    result.total_evaluations = evaluations;

    result.generation_of_best = 0;
    if (result.best_fitness < result.initial_best_fitness)
        for (std::size_t g = 0; g < result.fitness_trace.size(); ++g)
            if (result.fitness_trace[g] == result.best_fitness) {
                result.generation_of_best = g + 1;
                break;
            }
    return result;
}

} // namespace mep
