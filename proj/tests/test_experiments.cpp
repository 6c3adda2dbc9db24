#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "mep/experiments.hpp"
#include "mep/util.hpp"
#include "test_util.hpp"

using namespace mep;

TEST_CASE("the reference table is frozen") {
    const auto& table = reference_table();
    REQUIRE(table.size() == 6);
    CHECK(table[0].dataset == "albrecht");
    CHECK(table[0].gp_fitness == 0.548);
    CHECK(table[1].mep_fitness == 0.14200);
    CHECK(table[3].mep_fitness == 0.08570);
    CHECK(reference_table_checksum() == 0xe3d54479d8f64412ULL);
}

TEST_CASE("standard configuration run has the documented shape") {
    const DatasetSchema& schema = builtin_schema("kemerer");
    const Dataset ds = drop_incomplete(
        load_csv(test::data_dir() / "benchmarks" / "kemerer.csv", schema), schema);

    const RunResult r = run_paper_config(ds, 1);
    CHECK(r.params_echo.population_size == 40);
    CHECK(r.params_echo.crossover_rate == 0.7);
    CHECK(r.params_echo.mutation_rate == 0.05);
    CHECK(r.params_echo.tournament_size == 2);
    REQUIRE(r.fitness_trace.size() == 200);
    for (std::size_t g = 1; g < r.fitness_trace.size(); ++g)
        CHECK(r.fitness_trace[g] <= r.fitness_trace[g - 1]);
    CHECK(r.best_fitness == r.fitness_trace.back());
}

TEST_CASE("grids enumerate every cell and aggregate deterministically") {
    const Dataset ds = make_power_law_dataset(20, 2.0, 1.0, 1, 50, 9);

    GridSpec grid;
    grid.population_sizes = {6, 10};
    grid.generation_counts = {3, 6};
    grid.seeds = {0, 1, 2};
    grid.base = paper_params(0);
    grid.base.num_genes = 8;

    const GridResult a = run_grid(grid, ds);
    CHECK(a.rows.size() == grid.cell_count());
    CHECK(a.computed_cells == grid.cell_count());
    for (const auto& row : a.rows)
        CHECK(row.error.empty());

    // execution order must not matter: 1 thread vs 3 threads, same rows
    const GridResult b = run_grid(grid, ds, std::nullopt, 3);
    REQUIRE(b.rows.size() == a.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].population_size == b.rows[i].population_size);
        CHECK(a.rows[i].generations == b.rows[i].generations);
        CHECK(a.rows[i].seed == b.rows[i].seed);
        CHECK(a.rows[i].best_fitness == b.rows[i].best_fitness);
        CHECK(a.rows[i].best_expression == b.rows[i].best_expression);
    }

    // medians per (pop, gens) over seeds exist for every cell
    const auto medians = grid_medians(a);
    CHECK(medians.size() == 4);
}

TEST_CASE("same-seed runs share their prefix, so more generations never hurt") {
    const Dataset ds = make_power_law_dataset(20, 2.0, 1.0, 1, 50, 9);
    GridSpec grid;
    grid.population_sizes = {8};
    grid.generation_counts = {2, 5, 9};
    grid.seeds = {0, 1, 2, 3, 4};
    grid.base = paper_params(0);
    grid.base.num_genes = 8;

    const auto medians = grid_medians(run_grid(grid, ds));
    CHECK(medians.at({8, 5}) <= medians.at({8, 2}));
    CHECK(medians.at({8, 9}) <= medians.at({8, 5}));
}

TEST_CASE("grid cell files are reused on resume") {
    test::TempDir tmp("grid_resume");
    const Dataset ds = make_power_law_dataset(15, 2.0, 1.0, 1, 50, 3);

    GridSpec grid;
    grid.population_sizes = {6};
    grid.generation_counts = {3, 5};
    grid.seeds = {0, 1};
    grid.base = paper_params(0);
    grid.base.num_genes = 8;

    const GridResult first = run_grid(grid, ds, tmp.path);
    CHECK(first.computed_cells == 4);
    CHECK(first.reused_cells == 0);
    const std::string results_csv = read_text_file(tmp.path / "results.csv");

    // delete one cell file; a rerun recomputes only that cell
    std::size_t removed = 0;
    for (const auto& entry : std::filesystem::directory_iterator(tmp.path / "cells")) {
        if (removed == 0) {
            std::filesystem::remove(entry.path());
            ++removed;
        }
    }
    REQUIRE(removed == 1);

    const GridResult second = run_grid(grid, ds, tmp.path);
    CHECK(second.computed_cells == 1);
    CHECK(second.reused_cells == 3);
    CHECK(read_text_file(tmp.path / "results.csv") == results_csv); // byte-identical

    // a one-cell grid looks like a single standard run
    GridSpec one;
    one.population_sizes = {40};
    one.generation_counts = {5};
    one.seeds = {7};
    one.base = paper_params(0);
    const GridResult single = run_grid(one, ds);
    REQUIRE(single.rows.size() == 1);
    EvolutionParams p = paper_params(7);
    p.generations = 5;
    const RunResult direct = run(p, ds, PrimitiveSet::with_default_functions({"S"}));
    CHECK(single.rows[0].best_fitness == direct.best_fitness);
}

TEST_CASE("failing cells are recorded, not fatal") {
    // population_size 1 violates parameter checks inside the cell
    const Dataset ds = make_power_law_dataset(10, 2.0, 1.0, 1, 50, 3);
    GridSpec grid;
    grid.population_sizes = {1, 6};
    grid.generation_counts = {2};
    grid.seeds = {0};
    grid.base = paper_params(0);
    grid.base.num_genes = 8;
    const GridResult result = run_grid(grid, ds);
    REQUIRE(result.rows.size() == 2);
    CHECK_FALSE(result.rows[0].error.empty());
    CHECK(result.rows[1].error.empty());
}

TEST_CASE("comparison against the reference table") {
    std::map<std::string, MeasuredResult> measured;
    measured["albrecht"] = {0.30, 12};
    measured["bailey_basili"] = {0.269, 5}; // exact tie with the GP column
    measured["nonesuch"] = {0.1, 1};

    const ComparisonSummary summary = compare_with_reference(measured, reference_table());
    REQUIRE(summary.rows.size() == 2);
    CHECK(summary.rows[0].dataset == "albrecht");
    CHECK(summary.rows[0].outcome == "win");
    CHECK(summary.rows[1].outcome == "tie");
    CHECK(summary.wins == 1);
    CHECK(summary.ties == 1);
    CHECK(summary.losses == 0);
    // four reference datasets unmeasured plus one unknown measurement
    CHECK(summary.missing.size() == 5);
}

TEST_CASE("emit_report writes deterministic files") {
    test::TempDir tmp("emit");
    const DatasetSchema& schema = builtin_schema("bailey_basili");
    const Dataset ds = drop_incomplete(
        load_csv(test::data_dir() / "benchmarks" / "bailey_basili.csv", schema), schema);

    EvolutionParams params = paper_params(3);
    params.generations = 10;
    const RunResult result = run(params, ds, PrimitiveSet::with_default_functions(
                                                  to_primitive_terminals(ds)));

    const auto files_a = emit_report(result, ds, schema, tmp.path / "a");
    REQUIRE(files_a.size() == 3);
    const auto files_b = emit_report(result, ds, schema, tmp.path / "b");
    for (std::size_t i = 0; i < files_a.size(); ++i)
        CHECK(read_text_file(files_a[i]) == read_text_file(files_b[i]));

    const auto j = nlohmann::json::parse(read_text_file(tmp.path / "a" / "result.json"));
    CHECK(j.at("params").at("population_size").get<std::size_t>() == 40);
    CHECK(j.at("params").at("seed").get<std::uint64_t>() == 3);
    CHECK(j.at("dataset").get<std::string>() == "bailey_basili");
    CHECK(j.at("metric").get<std::string>() == "mmre");
    CHECK(j.at("fitness_trace").size() == 10);
    CHECK(j.at("baselines").contains("mean_predictor"));
    CHECK(j.at("baselines").contains("power_law"));
    CHECK(j.at("reference").at("gp_fitness").get<double>() == 0.269);

    const std::string trace = read_text_file(tmp.path / "a" / "trace.csv");
    CHECK(trace.substr(0, trace.find('\n')) == "generation,best_fitness,replacements");
    std::size_t lines = 0;
    for (char c : trace)
        lines += (c == '\n') ? 1 : 0;
    CHECK(lines == 11); // header + one row per generation

    const std::string dot = read_text_file(tmp.path / "a" / "best.dot");
    CHECK(dot.rfind("digraph expression {", 0) == 0);
    CHECK(dot.find("}") != std::string::npos);
}

TEST_CASE("multi-seed summaries track the best seed and baselines") {
    const DatasetSchema& schema = builtin_schema("bailey_basili");
    const Dataset ds = drop_incomplete(
        load_csv(test::data_dir() / "benchmarks" / "bailey_basili.csv", schema), schema);
    EvolutionParams params = paper_params(0);
    params.generations = 15;

    const MultiSeedSummary summary = multi_seed_summary(ds, schema, {0, 1, 2}, params);
    REQUIRE(summary.fitness_per_seed.size() == 3);
    double best = summary.fitness_per_seed[0];
    for (double f : summary.fitness_per_seed)
        best = std::min(best, f);
    CHECK(summary.best_fitness == best);
    CHECK(summary.fitness_per_seed[summary.best_seed_index] == best);
    CHECK(summary.median_fitness == median(summary.fitness_per_seed));
    CHECK(summary.baselines.mean_predictor_fitness > 0);
    CHECK(summary.baselines.power_law.has_value());
}

TEST_CASE("synthetic power-law data is deterministic and in range") {
    const Dataset a = make_power_law_dataset(50, 2.5, 0.9, 1, 100, 42);
    const Dataset b = make_power_law_dataset(50, 2.5, 0.9, 1, 100, 42);
    REQUIRE(a.cases.size() == 50);
    for (std::size_t i = 0; i < a.cases.size(); ++i) {
        CHECK(a.cases[i].features == b.cases[i].features);
        const double s = a.cases[i].features[0];
        CHECK(s >= 1);
        CHECK(s < 100);
        CHECK(a.cases[i].effort == doctest::Approx(2.5 * std::pow(s, 0.9)));
    }
}
