#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mep/primitives.hpp"
#include "mep/rng.hpp"

namespace mep {

// One slot of a linear chromosome: either a terminal (an input variable) or
// a function whose operands point at strictly earlier genes. The pointer
// discipline makes the reference graph acyclic by construction.
struct Gene {
    enum class Kind : std::uint8_t { terminal, function };

    Kind kind = Kind::terminal;
    std::size_t terminal = 0;       // index into PrimitiveSet::terminals
    FunctionSymbol function = FunctionSymbol::add;
    std::vector<std::size_t> args;  // positions of earlier genes

    static Gene make_terminal(std::size_t terminal_index) {
        Gene g;
        g.kind = Kind::terminal;
        g.terminal = terminal_index;
        return g;
    }

    static Gene make_function(FunctionSymbol f, std::vector<std::size_t> operand_positions) {
        Gene g;
        g.kind = Kind::function;
        g.function = f;
        g.args = std::move(operand_positions);
        return g;
    }

    bool operator==(const Gene&) const = default;
};

// Fixed-length list of genes. Gene 0 must be a terminal; every chromosome of
// G genes encodes G expressions, one rooted at each position.
struct Chromosome {
    std::vector<Gene> genes;

    std::size_t size() const { return genes.size(); }
    bool operator==(const Chromosome&) const = default;
};

// Largest possible symbol count of a chromosome: (max_arity+1)*(G-1)+1,
// counting one symbol per terminal gene and 1+arity per function gene.
std::size_t capacity(std::size_t max_arity, std::size_t num_genes);

// Actual symbol count under the same counting rule.
std::size_t symbol_count(const Chromosome& chromosome);

// Uniformly random valid chromosome. Gene 0 is a uniform terminal; later
// genes become functions with probability function_probability (uniform
// symbol, operand pointers uniform over earlier positions) and terminals
// otherwise.
Chromosome random_chromosome(const PrimitiveSet& primitives, std::size_t num_genes,
                             RandomStream& rng, double function_probability = 0.5);

enum class ViolationKind {
    empty_chromosome,
    first_gene_not_terminal,
    self_pointer,
    forward_pointer,
    arity_mismatch,
    unknown_symbol,
    unknown_terminal,
};

std::string_view violation_name(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::size_t gene;     // offending position
    std::string detail;
};

// Violations are data, not failures: a report lists everything wrong.
struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(ViolationKind kind) const;
};

ValidationReport validate(const Chromosome& chromosome, const PrimitiveSet& primitives);

// Line-oriented text form, one gene per line, positions 1-based:
//
//   1: a
//   3: + 1, 2
//   6: SQRT 4
//
// from_text resolves terminal names against the given primitive set;
// the inferring overload collects terminal names in order of appearance and
// returns them alongside the chromosome.
std::string to_text(const Chromosome& chromosome, const PrimitiveSet& primitives);
Chromosome from_text(const std::string& text, const PrimitiveSet& primitives);

struct ParsedChromosome {
    Chromosome chromosome;
    PrimitiveSet primitives; // inferred terminals, default function set
};
ParsedChromosome from_text(const std::string& text);

} // namespace mep
