#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "mep/expression.hpp"
#include "mep/fitness.hpp"

namespace mep {

enum class CrossoverKind { one_point, two_point, uniform };

std::string_view crossover_kind_name(CrossoverKind kind);
CrossoverKind parse_crossover_kind(std::string_view name);

struct EvolutionParams {
    std::size_t population_size = 40;
    std::size_t generations = 200;
    double crossover_rate = 0.7;
    double mutation_rate = 0.05;   // per gene
    CrossoverKind crossover_kind = CrossoverKind::uniform;
    std::size_t tournament_size = 2;
    std::size_t num_genes = 16;
    Metric metric = Metric::mmre;
    std::uint64_t seed = 0;

    // knobs beyond the core set
    double function_probability = 0.5; // P(function) for genes past the first
    std::size_t steps_per_generation = 0; // 0 -> population_size / 2

    std::size_t effective_steps_per_generation() const;
    void check() const; // throws std::invalid_argument on bad values
};

struct Individual {
    Chromosome chromosome;
    double fitness = 0;
    std::size_t best_gene_index = 0;
};

using Population = std::vector<Individual>;

// Draws k population indices uniformly with replacement and returns the one
// with minimal fitness; on equal fitness the earlier draw wins, so a
// population of equals is sampled uniformly.
std::size_t tournament_select(std::span<const double> fitnesses, std::size_t tournament_size,
                              RandomStream& rng);

// The recombination operators exchange genes between equal-length parents.
// Positions never move, and operand pointers are position-relative, so all
// offspring of valid parents are valid.
std::pair<Chromosome, Chromosome> crossover_one_point(const Chromosome& parent_a,
                                                      const Chromosome& parent_b, RandomStream& rng);
std::pair<Chromosome, Chromosome> crossover_two_point(const Chromosome& parent_a,
                                                      const Chromosome& parent_b, RandomStream& rng);
std::pair<Chromosome, Chromosome> crossover_uniform(const Chromosome& parent_a,
                                                    const Chromosome& parent_b, RandomStream& rng);
// deterministic core of uniform crossover; mask[i] true swaps position i
std::pair<Chromosome, Chromosome> crossover_uniform_masked(const Chromosome& parent_a,
                                                           const Chromosome& parent_b,
                                                           const std::vector<bool>& swap_mask);
std::pair<Chromosome, Chromosome> crossover(CrossoverKind kind, const Chromosome& parent_a,
                                            const Chromosome& parent_b, RandomStream& rng);

// Each gene rerolls independently with the given probability. A gene
// rerolled as a function gets fresh uniform operand pointers; gene 0 can
// only become another terminal.
Chromosome mutate(const Chromosome& chromosome, double mutation_rate,
                  const PrimitiveSet& primitives, RandomStream& rng,
                  double function_probability = 0.5);

struct StepLog {
    bool replaced = false;
    std::size_t replaced_index = 0; // meaningful when replaced
    double best_fitness_after = 0;
};

// One steady-state iteration: tournament-select two parents, recombine with
// probability crossover_rate (clone otherwise), mutate and evaluate both
// offspring; the better offspring replaces the current worst individual only
// if strictly fitter. Exactly two fitness evaluations happen per step.
StepLog evolve_step(Population& population, const EvolutionParams& params, const Dataset& dataset,
                    const PrimitiveSet& primitives, const ProtectedArithmetic& arithmetic,
                    RandomStream& rng, std::size_t& evaluation_count);

struct RunResult {
    Chromosome best_chromosome;
    ExpressionTree best_expression;
    double best_fitness = 0;
    std::size_t best_gene_index = 0;
    std::vector<double> fitness_trace;          // best fitness after each generation
    std::vector<std::size_t> replacements_per_generation;
    std::size_t generation_of_best = 0;         // 0 = already present in the initial population
    std::uint64_t seed = 0;
    EvolutionParams params_echo;
    double initial_best_fitness = 0;
    std::size_t total_evaluations = 0;
};

// Full run: random initial population, then `generations` sweeps of
// steps_per_generation steady-state steps. Deterministic for a fixed seed.
RunResult run(const EvolutionParams& params, const Dataset& dataset, const PrimitiveSet& primitives,
              const ProtectedArithmetic& arithmetic = {});

} // namespace mep
