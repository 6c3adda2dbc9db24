#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "mep/primitives.hpp"

namespace mep {

// Guards that make every function in the set total over finite inputs, so
// any evolved expression stays evaluable:
//   x / y  with |y| < epsilon          -> x
//   LOG(x)                             -> ln(max(|x|, epsilon))
//   SQRT(x)                            -> sqrt(|x|)
//   POW(x, y), EXP(x) and any overflow -> magnitude clamped to overflow_cap
//   NaN (e.g. POW of a negative base)  -> 0
struct ProtectedArithmetic {
    double epsilon = 1e-9;
    double overflow_cap = 1e12;
};

inline double protect(double v, const ProtectedArithmetic& a) {
    if (std::isnan(v)) return 0.0;
    if (v > a.overflow_cap) return a.overflow_cap;
    if (v < -a.overflow_cap) return -a.overflow_cap;
    return v;
}

inline double apply_function(FunctionSymbol f, std::span<const double> args,
                             const ProtectedArithmetic& a = {}) {
    if (args.size() != arity(f))
        throw std::invalid_argument(std::string(symbol_name(f)) + " expects " +
                                    std::to_string(arity(f)) + " arguments, got " +
                                    std::to_string(args.size()));
    switch (f) {
    case FunctionSymbol::sub: return protect(args[0] - args[1], a);
    case FunctionSymbol::add: return protect(args[0] + args[1], a);
    case FunctionSymbol::mul: return protect(args[0] * args[1], a);
    case FunctionSymbol::div:
        if (std::fabs(args[1]) < a.epsilon) return protect(args[0], a);
        return protect(args[0] / args[1], a);
    case FunctionSymbol::pow: return protect(std::pow(args[0], args[1]), a);
    case FunctionSymbol::exp: return protect(std::exp(args[0]), a);
    case FunctionSymbol::log: return protect(std::log(std::fmax(std::fabs(args[0]), a.epsilon)), a);
    case FunctionSymbol::sqrt: return protect(std::sqrt(std::fabs(args[0])), a);
    }
    throw std::invalid_argument("unhandled function symbol");
}

} // namespace mep
