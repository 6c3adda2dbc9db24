#include "mep/chromosome.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace mep {

std::size_t capacity(std::size_t max_arity, std::size_t num_genes) {
    return (max_arity + 1) * (num_genes - 1) + 1;
}

std::size_t symbol_count(const Chromosome& chromosome) {
    std::size_t n = 0;
    for (const Gene& g : chromosome.genes)
        n += (g.kind == Gene::Kind::terminal) ? 1 : 1 + g.args.size();
    return n;
}

Chromosome random_chromosome(const PrimitiveSet& primitives, std::size_t num_genes,
                             RandomStream& rng, double function_probability) {
    check_primitive_set(primitives);
    if (num_genes == 0)
        throw std::invalid_argument("chromosome needs at least one gene");

    Chromosome c;
    c.genes.reserve(num_genes);
    c.genes.push_back(Gene::make_terminal(rng.uniform_index(primitives.terminals.size())));
    for (std::size_t i = 1; i < num_genes; ++i) {
        if (!primitives.functions.empty() && rng.bernoulli(function_probability)) {
            FunctionSymbol f = primitives.functions[rng.uniform_index(primitives.functions.size())];
            std::vector<std::size_t> args(arity(f));
            for (auto& a : args)
                a = rng.uniform_index(i);
            c.genes.push_back(Gene::make_function(f, std::move(args)));
        } else {
            c.genes.push_back(Gene::make_terminal(rng.uniform_index(primitives.terminals.size())));
        }
    }
    return c;
}

std::string_view violation_name(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::empty_chromosome: return "empty-chromosome";
    case ViolationKind::first_gene_not_terminal: return "first-gene-not-terminal";
    case ViolationKind::self_pointer: return "self-pointer";
    case ViolationKind::forward_pointer: return "forward-pointer";
    case ViolationKind::arity_mismatch: return "arity-mismatch";
    case ViolationKind::unknown_symbol: return "unknown-symbol";
    case ViolationKind::unknown_terminal: return "unknown-terminal";
    }
    return "?";
}

bool ValidationReport::has(ViolationKind kind) const {
    for (const auto& v : violations)
        if (v.kind == kind)
            return true;
    return false;
}

ValidationReport validate(const Chromosome& chromosome, const PrimitiveSet& primitives) {
    ValidationReport report;
    auto add = [&](ViolationKind kind, std::size_t gene, std::string detail) {
        report.violations.push_back({kind, gene, std::move(detail)});
    };

    if (chromosome.genes.empty()) {
        add(ViolationKind::empty_chromosome, 0, "chromosome has no genes");
        return report;
    }
    if (chromosome.genes.front().kind != Gene::Kind::terminal)
        add(ViolationKind::first_gene_not_terminal, 0, "gene 0 must be a terminal");

    for (std::size_t i = 0; i < chromosome.genes.size(); ++i) {
        const Gene& g = chromosome.genes[i];
        if (g.kind == Gene::Kind::terminal) {
            if (g.terminal >= primitives.terminals.size())
                add(ViolationKind::unknown_terminal, i,
                    "terminal index " + std::to_string(g.terminal) + " out of range");
            continue;
        }
        if (!primitives.has_function(g.function))
            add(ViolationKind::unknown_symbol, i,
                std::string(symbol_name(g.function)) + " not in function set");
        if (g.args.size() != arity(g.function))
            add(ViolationKind::arity_mismatch, i,
                std::string(symbol_name(g.function)) + " expects " + std::to_string(arity(g.function)) +
                    " operands, has " + std::to_string(g.args.size()));
        for (std::size_t a : g.args) {
            if (a == i)
                add(ViolationKind::self_pointer, i, "operand points at the gene itself");
            else if (a > i)
                add(ViolationKind::forward_pointer, i,
                    "operand points forward to gene " + std::to_string(a));
        }
    }
    return report;
}

std::string to_text(const Chromosome& chromosome, const PrimitiveSet& primitives) {
    std::ostringstream out;
    for (std::size_t i = 0; i < chromosome.genes.size(); ++i) {
        const Gene& g = chromosome.genes[i];
        out << (i + 1) << ": ";
        if (g.kind == Gene::Kind::terminal) {
            if (g.terminal >= primitives.terminals.size())
                throw std::invalid_argument("terminal index out of range in to_text");
            out << primitives.terminals[g.terminal];
        } else {
            out << symbol_name(g.function);
            for (std::size_t k = 0; k < g.args.size(); ++k)
                out << (k == 0 ? " " : ", ") << (g.args[k] + 1);
        }
        out << '\n';
    }
    return out.str();
}

namespace {

struct TextGene {
    std::size_t position; // 0-based
    bool is_function;
    FunctionSymbol function;
    std::vector<std::size_t> args;
    std::string terminal_name;
};

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

std::size_t parse_count(const std::string& tok, const std::string& line) {
    std::size_t value = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || p != tok.data() + tok.size() || value == 0)
        throw std::invalid_argument("bad gene reference '" + tok + "' in line: " + line);
    return value;
}

std::vector<TextGene> parse_lines(const std::string& text) {
    std::vector<TextGene> parsed;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::string stripped = line;
        if (auto hash = stripped.find('#'); hash != std::string::npos)
            stripped.resize(hash);
        // every token after "<n>:" is symbol or operand; commas are decoration
        for (auto& ch : stripped)
            if (ch == ',')
                ch = ' ';
        auto toks = split_ws(stripped);
        if (toks.empty())
            continue;
        if (toks[0].empty() || toks[0].back() != ':')
            throw std::invalid_argument("expected '<position>:' prefix in line: " + line);
        toks[0].pop_back();
        TextGene g;
        g.position = parse_count(toks[0], line) - 1;
        if (toks.size() < 2)
            throw std::invalid_argument("missing symbol in line: " + line);
        if (auto f = parse_function_symbol(toks[1])) {
            g.is_function = true;
            g.function = *f;
            for (std::size_t k = 2; k < toks.size(); ++k)
                g.args.push_back(parse_count(toks[k], line) - 1);
        } else {
            if (toks.size() != 2)
                throw std::invalid_argument("terminal line has trailing tokens: " + line);
            g.is_function = false;
            g.terminal_name = toks[1];
        }
        if (g.position != parsed.size())
            throw std::invalid_argument("gene positions must be consecutive from 1, got line: " + line);
        parsed.push_back(std::move(g));
    }
    if (parsed.empty())
        throw std::invalid_argument("chromosome text contains no genes");
    return parsed;
}

} // namespace

Chromosome from_text(const std::string& text, const PrimitiveSet& primitives) {
    Chromosome c;
    for (auto& g : parse_lines(text)) {
        if (g.is_function) {
            c.genes.push_back(Gene::make_function(g.function, std::move(g.args)));
        } else {
            auto idx = primitives.terminal_index(g.terminal_name);
            if (!idx)
                throw std::invalid_argument("unknown terminal '" + g.terminal_name + "'");
            c.genes.push_back(Gene::make_terminal(*idx));
        }
    }
    return c;
}

ParsedChromosome from_text(const std::string& text) {
    ParsedChromosome result;
    std::vector<std::string> terminals;
    for (auto& g : parse_lines(text)) {
        if (g.is_function) {
            result.chromosome.genes.push_back(Gene::make_function(g.function, std::move(g.args)));
            continue;
        }
        std::size_t idx = terminals.size();
        for (std::size_t i = 0; i < terminals.size(); ++i)
            if (terminals[i] == g.terminal_name) {
                idx = i;
                break;
            }
        if (idx == terminals.size())
            terminals.push_back(g.terminal_name);
        result.chromosome.genes.push_back(Gene::make_terminal(idx));
    }
    result.primitives = PrimitiveSet::with_default_functions(std::move(terminals));
    return result;
}

} // namespace mep
