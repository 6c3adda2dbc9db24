#include "mep/expression.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace mep {

ExpressionTree ExpressionTree::leaf(std::string name) {
    ExpressionTree t;
    t.is_terminal = true;
    t.terminal = std::move(name);
    return t;
}

ExpressionTree ExpressionTree::node(FunctionSymbol f, std::vector<ExpressionTree> children) {
    ExpressionTree t;
    t.is_terminal = false;
    t.function = f;
    t.children = std::move(children);
    return t;
}

std::size_t node_count(const ExpressionTree& tree) {
    std::size_t n = 1;
    for (const auto& c : tree.children)
        n += node_count(c);
    return n;
}

std::size_t depth(const ExpressionTree& tree) {
    std::size_t d = 0;
    for (const auto& c : tree.children)
        d = std::max(d, depth(c));
    return d + 1;
}

ExpressionTree decode(const Chromosome& chromosome, const PrimitiveSet& primitives,
                      std::size_t gene_index) {
    if (gene_index >= chromosome.genes.size())
        throw std::invalid_argument("gene index " + std::to_string(gene_index) +
                                    " out of range (chromosome has " +
                                    std::to_string(chromosome.genes.size()) + " genes)");
    const Gene& g = chromosome.genes[gene_index];
    if (g.kind == Gene::Kind::terminal) {
        if (g.terminal >= primitives.terminals.size())
            throw std::invalid_argument("terminal index out of range at gene " +
                                        std::to_string(gene_index));
        return ExpressionTree::leaf(primitives.terminals[g.terminal]);
    }
    std::vector<ExpressionTree> children;
    children.reserve(g.args.size());
    for (std::size_t a : g.args) {
        if (a >= gene_index)
            throw std::invalid_argument("invalid chromosome: operand does not point backwards");
        children.push_back(decode(chromosome, primitives, a));
    }
    return ExpressionTree::node(g.function, std::move(children));
}

std::string render_infix(const ExpressionTree& tree) {
    if (tree.is_terminal)
        return tree.terminal;
    if (renders_infix(tree.function) && tree.children.size() == 2)
        return "(" + render_infix(tree.children[0]) + " " + std::string(symbol_name(tree.function)) +
               " " + render_infix(tree.children[1]) + ")";
    std::string out(symbol_name(tree.function));
    out += "(";
    for (std::size_t i = 0; i < tree.children.size(); ++i) {
        if (i) out += ", ";
        out += render_infix(tree.children[i]);
    }
    out += ")";
    return out;
}

namespace {

// Recursive-descent parser for the fully parenthesized form:
//   expr := IDENT | '(' expr OP expr ')' | FUNC '(' expr {',' expr} ')'
struct Parser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    void expect(char c) {
        if (peek() != c)
            throw std::invalid_argument(std::string("expected '") + c + "' at offset " +
                                        std::to_string(pos) + " in expression");
        ++pos;
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start)
            throw std::invalid_argument("expected identifier at offset " + std::to_string(pos));
        return std::string(text.substr(start, pos - start));
    }

    ExpressionTree expr() {
        if (peek() == '(') {
            ++pos;
            ExpressionTree lhs = expr();
            skip_ws();
            if (pos >= text.size())
                throw std::invalid_argument("unterminated expression");
            auto op = parse_function_symbol(text.substr(pos, 1));
            if (!op || !renders_infix(*op))
                throw std::invalid_argument("expected binary operator at offset " + std::to_string(pos));
            ++pos;
            ExpressionTree rhs = expr();
            expect(')');
            return ExpressionTree::node(*op, {std::move(lhs), std::move(rhs)});
        }
        std::string name = ident();
        if (peek() == '(') {
            auto f = parse_function_symbol(name);
            if (!f)
                throw std::invalid_argument("unknown function '" + name + "'");
            ++pos;
            std::vector<ExpressionTree> children;
            children.push_back(expr());
            while (peek() == ',') {
                ++pos;
                children.push_back(expr());
            }
            expect(')');
            if (children.size() != arity(*f))
                throw std::invalid_argument("function '" + name + "' applied to " +
                                            std::to_string(children.size()) + " arguments");
            return ExpressionTree::node(*f, std::move(children));
        }
        return ExpressionTree::leaf(std::move(name));
    }
};

void dot_escape_into(std::string& out, std::string_view label) {
    for (char c : label) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
}

std::size_t dot_nodes(const ExpressionTree& tree, std::size_t next_id, std::ostringstream& nodes,
                      std::ostringstream& edges) {
    const std::size_t id = next_id;
    std::string label;
    dot_escape_into(label, tree.is_terminal ? std::string_view(tree.terminal)
                                            : symbol_name(tree.function));
    nodes << "  n" << id << " [label=\"" << label << "\"];\n";
    std::size_t child = id + 1;
    for (const auto& c : tree.children) {
        edges << "  n" << id << " -> n" << child << ";\n";
        child = dot_nodes(c, child, nodes, edges);
    }
    return child;
}

} // namespace

ExpressionTree parse_infix(std::string_view text) {
    Parser p{text};
    ExpressionTree tree = p.expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw std::invalid_argument("trailing characters after expression at offset " +
                                    std::to_string(p.pos));
    return tree;
}

std::string export_dot(const ExpressionTree& tree) {
    std::ostringstream nodes, edges;
    dot_nodes(tree, 0, nodes, edges);
    std::ostringstream out;
    out << "digraph expression {\n" << nodes.str() << edges.str() << "}\n";
    return out.str();
}

} // namespace mep
