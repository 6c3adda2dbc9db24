#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mep/chromosome.hpp"

namespace mep {

// Expression decoded from a chromosome gene, as an explicit tree. Terminals
// carry their variable name; function nodes carry the symbol and children.
struct ExpressionTree {
    bool is_terminal = true;
    std::string terminal;
    FunctionSymbol function = FunctionSymbol::add;
    std::vector<ExpressionTree> children;

    static ExpressionTree leaf(std::string name);
    static ExpressionTree node(FunctionSymbol f, std::vector<ExpressionTree> children);

    bool operator==(const ExpressionTree&) const = default;
};

std::size_t node_count(const ExpressionTree& tree);
std::size_t depth(const ExpressionTree& tree);

// Expression rooted at the given gene, obtained by following operand
// pointers. gene_index out of range is an input error.
ExpressionTree decode(const Chromosome& chromosome, const PrimitiveSet& primitives,
                      std::size_t gene_index);

// Fully parenthesized rendering: "(a + b)", "((a + b) * d)", "POW(a, b)",
// "SQRT(a)". Full parentheses make re-parsing unambiguous.
std::string render_infix(const ExpressionTree& tree);

// Inverse of render_infix; throws std::invalid_argument on malformed text.
ExpressionTree parse_infix(std::string_view text);

// Graphviz document: one node per tree node (preorder ids), edges
// parent -> child in operand order.
std::string export_dot(const ExpressionTree& tree);

} // namespace mep
