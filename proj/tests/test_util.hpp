#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <unistd.h>

#include "mep/arithmetic.hpp"
#include "mep/dataset.hpp"
#include "mep/evaluate.hpp"
#include "mep/expression.hpp"

namespace mep::test {

// The classic eight-gene sample over terminals {a,b,c,d} and functions {+,*}:
//   1: a   2: b   3: + 1,2   4: c   5: d   6: + 4,5   7: * 3,5   8: + 2,6
inline PrimitiveSet sample_primitives() {
    PrimitiveSet p;
    p.terminals = {"a", "b", "c", "d"};
    p.functions = {FunctionSymbol::add, FunctionSymbol::mul};
    return p;
}

inline Chromosome sample_chromosome() {
    Chromosome c;
    c.genes.push_back(Gene::make_terminal(0));            // a
    c.genes.push_back(Gene::make_terminal(1));            // b
    c.genes.push_back(Gene::make_function(FunctionSymbol::add, {0, 1}));
    c.genes.push_back(Gene::make_terminal(2));            // c
    c.genes.push_back(Gene::make_terminal(3));            // d
    c.genes.push_back(Gene::make_function(FunctionSymbol::add, {3, 4}));
    c.genes.push_back(Gene::make_function(FunctionSymbol::mul, {2, 4}));
    c.genes.push_back(Gene::make_function(FunctionSymbol::add, {1, 5}));
    return c;
}

// Independent oracle: evaluate the decoded tree recursively. Shares only
// apply_function with the forward pass, so protection rules and operation
// order match exactly while the traversal path is independent.
inline double evaluate_tree(const ExpressionTree& tree, const std::map<std::string, double>& values,
                            const ProtectedArithmetic& arithmetic) {
    if (tree.is_terminal)
        return values.at(tree.terminal);
    std::vector<double> args;
    args.reserve(tree.children.size());
    for (const auto& child : tree.children)
        args.push_back(evaluate_tree(child, values, arithmetic));
    return apply_function(tree.function, args, arithmetic);
}

// In-memory dataset from parallel arrays (single feature).
inline Dataset make_dataset(const std::string& feature, const std::vector<double>& xs,
                            const std::vector<double>& efforts) {
    Dataset ds;
    ds.name = "inline";
    ds.effort_name = "Effort";
    ds.feature_names = {feature};
    for (std::size_t i = 0; i < xs.size(); ++i)
        ds.cases.push_back({{xs[i]}, efforts[i], i + 1});
    return ds;
}

inline std::filesystem::path data_dir() { return std::filesystem::path(MEP_DATA_DIR); }

// unique scratch directory, removed on destruction
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("mep_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
};

} // namespace mep::test
