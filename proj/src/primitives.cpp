#include "mep/primitives.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace mep {

std::size_t arity(FunctionSymbol f) {
    switch (f) {
    case FunctionSymbol::sub:
    case FunctionSymbol::add:
    case FunctionSymbol::mul:
    case FunctionSymbol::div:
    case FunctionSymbol::pow:
        return 2;
    case FunctionSymbol::exp:
    case FunctionSymbol::log:
    case FunctionSymbol::sqrt:
        return 1;
    }
    return 0; // unreachable
}

std::string_view symbol_name(FunctionSymbol f) {
    switch (f) {
    case FunctionSymbol::sub: return "-";
    case FunctionSymbol::add: return "+";
    case FunctionSymbol::mul: return "*";
    case FunctionSymbol::div: return "/";
    case FunctionSymbol::pow: return "POW";
    case FunctionSymbol::exp: return "EXP";
    case FunctionSymbol::log: return "LOG";
    case FunctionSymbol::sqrt: return "SQRT";
    }
    return "?";
}

bool renders_infix(FunctionSymbol f) {
    switch (f) {
    case FunctionSymbol::sub:
    case FunctionSymbol::add:
    case FunctionSymbol::mul:
    case FunctionSymbol::div:
        return true;
    default:
        return false;
    }
}

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

} // namespace

std::optional<FunctionSymbol> parse_function_symbol(std::string_view token) {
    if (token == "-") return FunctionSymbol::sub;
    if (token == "+") return FunctionSymbol::add;
    if (token == "*") return FunctionSymbol::mul;
    if (token == "/") return FunctionSymbol::div;
    const std::string t = upper(token);
    if (t == "POW" || t == "POWER") return FunctionSymbol::pow;
    if (t == "EXP") return FunctionSymbol::exp;
    if (t == "LOG") return FunctionSymbol::log;
    if (t == "SQRT") return FunctionSymbol::sqrt;
    return std::nullopt;
}

std::size_t PrimitiveSet::max_arity() const {
    std::size_t m = 1; // capacity formula stays meaningful for terminal-only sets
    for (FunctionSymbol f : functions)
        m = std::max(m, arity(f));
    return m;
}

std::optional<std::size_t> PrimitiveSet::terminal_index(std::string_view name) const {
    for (std::size_t i = 0; i < terminals.size(); ++i)
        if (terminals[i] == name)
            return i;
    return std::nullopt;
}

bool PrimitiveSet::has_function(FunctionSymbol f) const {
    return std::find(functions.begin(), functions.end(), f) != functions.end();
}

PrimitiveSet PrimitiveSet::with_default_functions(std::vector<std::string> terminal_names) {
    PrimitiveSet set;
    set.terminals = std::move(terminal_names);
    set.functions.assign(std::begin(all_function_symbols), std::end(all_function_symbols));
    check_primitive_set(set);
    return set;
}

void check_primitive_set(const PrimitiveSet& primitives) {
    if (primitives.terminals.empty())
        throw std::invalid_argument("primitive set needs at least one terminal");
    std::unordered_set<std::string> names;
    for (const auto& t : primitives.terminals) {
        if (t.empty())
            throw std::invalid_argument("terminal name may not be empty");
        if (!names.insert(t).second)
            throw std::invalid_argument("duplicate terminal name: " + t);
    }
    std::unordered_set<int> fs;
    for (FunctionSymbol f : primitives.functions)
        if (!fs.insert(static_cast<int>(f)).second)
            throw std::invalid_argument(std::string("duplicate function symbol: ") + std::string(symbol_name(f)));
}

} // namespace mep
