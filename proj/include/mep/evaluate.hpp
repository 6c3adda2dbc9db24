#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mep/arithmetic.hpp"
#include "mep/chromosome.hpp"

namespace mep {

// Single forward pass over the genes: value[i] is the result of the
// expression rooted at gene i. Terminals read terminal_values by index;
// function genes apply the protected function to already-computed values.
// Every output is finite.
void evaluate_all_into(std::vector<double>& values, const Chromosome& chromosome,
                       std::span<const double> terminal_values, const ProtectedArithmetic& arithmetic);

std::vector<double> evaluate_all(const Chromosome& chromosome, std::span<const double> terminal_values,
                                 const ProtectedArithmetic& arithmetic = {});

// Name-bound variant: the case must bind every terminal the primitive set
// declares, otherwise an std::invalid_argument names the unbound variable.
std::vector<double> evaluate_all(const Chromosome& chromosome, const PrimitiveSet& primitives,
                                 const std::map<std::string, double>& fitness_case,
                                 const ProtectedArithmetic& arithmetic = {});

} // namespace mep
