#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mep {

// Function symbols available to evolved expressions.
enum class FunctionSymbol : std::uint8_t {
    sub,
    add,
    mul,
    div,
    pow, // binary: base, exponent
    exp,
    log,
    sqrt,
};

inline constexpr FunctionSymbol all_function_symbols[] = {
    FunctionSymbol::sub, FunctionSymbol::add, FunctionSymbol::mul, FunctionSymbol::div,
    FunctionSymbol::pow, FunctionSymbol::exp, FunctionSymbol::log, FunctionSymbol::sqrt,
};

std::size_t arity(FunctionSymbol f);
std::string_view symbol_name(FunctionSymbol f);

// true for -, +, *, / which render as "(a op b)"; POW renders call-style
bool renders_infix(FunctionSymbol f);

// Accepts the canonical names plus the POWER alias. Case-sensitive except
// for the named functions, which are accepted in upper or lower case.
std::optional<FunctionSymbol> parse_function_symbol(std::string_view token);

// Terminal and function sets available to a run. Terminals are the input
// variable names (dataset feature columns); functions come from the fixed
// symbol alphabet above.
struct PrimitiveSet {
    std::vector<std::string> terminals;
    std::vector<FunctionSymbol> functions;

    std::size_t max_arity() const;
    std::optional<std::size_t> terminal_index(std::string_view name) const;
    bool has_function(FunctionSymbol f) const;

    // full eight-symbol function set over the given variables
    static PrimitiveSet with_default_functions(std::vector<std::string> terminal_names);
};

// Throws std::invalid_argument on empty terminals or duplicate symbols/names.
void check_primitive_set(const PrimitiveSet& primitives);

} // namespace mep
