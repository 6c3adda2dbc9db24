#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mep/baselines.hpp"
#include "mep/evolution.hpp"

namespace mep {

// Bundled reference results for the six benchmark datasets: fitness reached
// by a published tree-GP study and the follow-up linear-GP values this
// engine is measured against. Read-only; guarded by a checksum test.
struct ReferenceEntry {
    std::string dataset;      // schema name
    std::string display_name;
    double gp_fitness;
    double mep_fitness;
    std::size_t mep_generation;
};

const std::vector<ReferenceEntry>& reference_table();
std::uint64_t reference_table_checksum();

// Standard run configuration: population 40, 200 generations, crossover 0.7,
// mutation 0.05, binary tournament, full function set.
EvolutionParams paper_params(std::uint64_t seed);
RunResult run_paper_config(const Dataset& dataset, std::uint64_t seed);

// Cartesian sweep over population sizes and generation counts, every cell
// run once per seed.
struct GridSpec {
    std::vector<std::size_t> population_sizes;
    std::vector<std::size_t> generation_counts;
    std::vector<std::uint64_t> seeds;
    EvolutionParams base; // population_size/generations/seed overridden per cell

    static GridSpec test1(std::size_t num_seeds); // pops 10..40, gens 25..250
    static GridSpec test2(std::size_t num_seeds); // pops = gens = 50..500
    std::size_t cell_count() const;
};

struct GridRow {
    std::size_t population_size = 0;
    std::size_t generations = 0;
    std::uint64_t seed = 0;
    double best_fitness = 0;
    std::size_t generation_of_best = 0;
    std::string best_expression;
    std::string error;    // empty on success
    double wall_ms = 0;   // never part of deterministic outputs
    bool reused = false;  // cell loaded from a previous partial run
};

struct GridResult {
    std::vector<GridRow> rows; // sorted by (population, generations, seed)
    Metric metric = Metric::mmre;
    std::size_t computed_cells = 0;
    std::size_t reused_cells = 0;
};

// Runs every cell (optionally on several threads), sorted deterministically
// regardless of execution order. A failed cell is recorded as a row with an
// error, not a fatal stop. With an output directory, per-cell JSON files are
// written under <out>/cells and complete cells of a previous run are reused
// (cell identity = hash of all run parameters + dataset name).
GridResult run_grid(const GridSpec& grid, const Dataset& dataset,
                    const std::optional<std::filesystem::path>& out_dir = std::nullopt,
                    std::size_t threads = 1);

// results.csv (deterministic), timing.csv (wall clock), aggregates.csv
// (per-cell median/best over seeds).
void write_grid_csv(const GridResult& result, const std::filesystem::path& out_dir);

// median best-fitness per (population, generations) cell over seeds
std::map<std::pair<std::size_t, std::size_t>, double> grid_medians(const GridResult& result);

struct MeasuredResult {
    double fitness = 0;
    std::size_t generation_of_best = 0;
    std::string metric = "mmre"; // as declared by the result file
};

struct ComparisonRow {
    std::string dataset;
    std::string display_name;
    double reference_fitness = 0; // GP column
    double measured_fitness = 0;
    std::size_t generation_of_best = 0;
    std::string outcome; // "win", "tie", "loss"
};

struct ComparisonSummary {
    std::vector<ComparisonRow> rows;
    std::size_t wins = 0;
    std::size_t ties = 0;
    std::size_t losses = 0;
    std::vector<std::string> missing; // reference datasets without a measurement
};

ComparisonSummary compare_with_reference(const std::map<std::string, MeasuredResult>& results,
                                         const std::vector<ReferenceEntry>& reference);

// Multi-seed statistics for one dataset under the standard configuration,
// with both baselines fitted on the same data.
struct BaselineScores {
    double mean_predictor_fitness = 0;
    std::optional<PowerLawModel> power_law;
    double power_law_fitness = 0;  // valid when power_law is set
    std::string power_law_error;   // set when the fit failed
};

struct MultiSeedSummary {
    std::string dataset;
    std::vector<double> fitness_per_seed; // ordered like the seed list
    double median_fitness = 0;
    double best_fitness = 0;
    std::size_t best_seed_index = 0;
    RunResult best_run;
    BaselineScores baselines;
};

BaselineScores score_baselines(const Dataset& dataset, const DatasetSchema& schema, Metric metric);
MultiSeedSummary multi_seed_summary(const Dataset& dataset, const DatasetSchema& schema,
                                    const std::vector<std::uint64_t>& seeds,
                                    const EvolutionParams& params);

// Report files for one run: result.json, trace.csv, best.dot -- all
// byte-deterministic for identical inputs. `formats` accepts any subset of
// {"json", "csv", "dot"}.
std::vector<std::filesystem::path> emit_report(const RunResult& result, const Dataset& dataset,
                                               const DatasetSchema& schema,
                                               const std::filesystem::path& out_dir,
                                               const std::vector<std::string>& formats = {"json", "csv",
                                                                                          "dot"});

// Synthetic single-feature benchmark: effort = a * size^b with size uniform
// in [size_min, size_max]. Noise-free by default.
Dataset make_power_law_dataset(std::size_t num_cases, double a, double b, double size_min,
                               double size_max, std::uint64_t seed);

} // namespace mep
