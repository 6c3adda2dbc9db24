// Command-line front end: evolve effort-estimation equations, sweep
// population/generation grids, compare against the bundled reference table,
// and decode chromosome text into readable expressions.

#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mep/experiments.hpp"
#include "mep/util.hpp"

namespace fs = std::filesystem;
using mep::format_double;

namespace {

struct DatasetOptions {
    std::string path;
    std::string schema; // empty: inferred from the file stem, else generic
    std::string effort_column;
    std::string size_column;
};

void add_dataset_options(CLI::App* cmd, DatasetOptions& opts) {
    cmd->add_option("--dataset", opts.path, "CSV file: feature columns plus an effort column")
        ->required();
    cmd->add_option("--schema", opts.schema,
                    "dataset schema name (albrecht, bailey_basili, desharnais, heiat, kemerer, "
                    "miyazaki) or 'generic'");
    cmd->add_option("--effort-col", opts.effort_column,
                    "effort column name for generic schemas (default: Effort)");
    cmd->add_option("--size-col", opts.size_column,
                    "size column for the power-law baseline (default: per schema, else the "
                    "first feature)");
}

mep::DatasetSchema resolve_schema(const DatasetOptions& opts) {
    std::string name = opts.schema;
    if (name.empty()) {
        const std::string stem = fs::path(opts.path).stem().string();
        name = mep::has_builtin_schema(stem) ? stem : "generic";
    }
    if (name == "generic") {
        mep::DatasetSchema schema =
            mep::generic_schema(opts.effort_column.empty() ? "Effort" : opts.effort_column);
        return schema;
    }
    return mep::builtin_schema(name);
}

mep::Dataset load_clean(const DatasetOptions& opts, mep::DatasetSchema& schema) {
    mep::Dataset raw = mep::load_csv(opts.path, schema);
    mep::Dataset clean = mep::drop_incomplete(raw, schema);
    if (!opts.size_column.empty())
        schema.size_column = opts.size_column;
    if (schema.size_column.empty())
        schema.size_column = clean.feature_names.front();
    return clean;
}

struct ParamOptions {
    std::size_t pop = 40;
    std::size_t gens = 200;
    double crossover_rate = 0.7;
    double mutation_rate = 0.05;
    std::string crossover_kind = "uniform";
    std::size_t tournament = 2;
    std::size_t num_genes = 16;
    std::string metric = "mmre";
    std::uint64_t seed = 0;
    double function_prob = 0.5;
    std::size_t steps_per_gen = 0;
};

void add_param_options(CLI::App* cmd, ParamOptions& opts, bool scalar_gens) {
    cmd->add_option("--pop", opts.pop, "population size");
    if (scalar_gens)
        cmd->add_option("--gens", opts.gens, "number of generations");
    cmd->add_option("--crossover-rate", opts.crossover_rate, "crossover probability");
    cmd->add_option("--mutation-rate", opts.mutation_rate, "per-gene mutation probability");
    cmd->add_option("--crossover-kind", opts.crossover_kind, "one_point, two_point or uniform");
    cmd->add_option("--tournament", opts.tournament, "tournament size");
    cmd->add_option("--num-genes", opts.num_genes, "chromosome length");
    cmd->add_option("--metric", opts.metric, "sum_abs_error or mmre");
    cmd->add_option("--seed", opts.seed, "random seed");
    cmd->add_option("--function-prob", opts.function_prob,
                    "probability that a fresh gene is a function");
    cmd->add_option("--steps-per-gen", opts.steps_per_gen,
                    "steady-state steps per generation (0: population/2)");
}

mep::EvolutionParams to_params(const ParamOptions& opts) {
    mep::EvolutionParams p;
    p.population_size = opts.pop;
    p.generations = opts.gens;
    p.crossover_rate = opts.crossover_rate;
    p.mutation_rate = opts.mutation_rate;
    p.crossover_kind = mep::parse_crossover_kind(opts.crossover_kind);
    p.tournament_size = opts.tournament;
    p.num_genes = opts.num_genes;
    p.metric = mep::parse_metric(opts.metric);
    p.seed = opts.seed;
    p.function_probability = opts.function_prob;
    p.steps_per_generation = opts.steps_per_gen;
    p.check();
    return p;
}

std::vector<std::string> split_formats(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

int cmd_run(const DatasetOptions& data_opts, const ParamOptions& param_opts,
            const std::string& out_dir, const std::string& formats) {
    mep::DatasetSchema schema = resolve_schema(data_opts);
    const mep::Dataset dataset = load_clean(data_opts, schema);
    const mep::EvolutionParams params = to_params(param_opts);
    const mep::PrimitiveSet primitives =
        mep::PrimitiveSet::with_default_functions(mep::to_primitive_terminals(dataset));

    mep::RunResult result = mep::run(params, dataset, primitives);
    const auto files = mep::emit_report(result, dataset, schema, out_dir, split_formats(formats));

    std::cout << "dataset        " << dataset.name << " (" << dataset.cases.size() << " cases)\n"
              << "metric         " << mep::metric_name(params.metric) << "\n"
              << "best fitness   " << format_double(result.best_fitness) << " (gene "
              << result.best_gene_index << ", generation " << result.generation_of_best << ")\n"
              << "expression     " << mep::render_infix(result.best_expression) << "\n";
    for (const auto& f : files)
        std::cout << "wrote          " << f.string() << "\n";
    return 0;
}

int cmd_grid(const DatasetOptions& data_opts, ParamOptions& param_opts, const std::string& preset,
             std::vector<std::size_t>& pops, std::vector<std::size_t>& gens, std::size_t num_seeds,
             const std::string& out_dir, std::size_t threads) {
    mep::DatasetSchema schema = resolve_schema(data_opts);
    const mep::Dataset dataset = load_clean(data_opts, schema);

    mep::GridSpec grid;
    if (preset == "test1")
        grid = mep::GridSpec::test1(num_seeds);
    else if (preset == "test2")
        grid = mep::GridSpec::test2(num_seeds);
    else if (preset.empty()) {
        if (pops.empty() || gens.empty())
            throw std::runtime_error("grid needs --preset or both --pops and --gens");
        grid.population_sizes = pops;
        grid.generation_counts = gens;
        for (std::size_t i = 0; i < num_seeds; ++i)
            grid.seeds.push_back(i);
    } else {
        throw std::runtime_error("unknown preset '" + preset + "' (expected test1 or test2)");
    }
    grid.base = to_params(param_opts);

    const mep::GridResult result = mep::run_grid(grid, dataset, fs::path(out_dir), threads);
    std::cout << "grid cells     " << result.rows.size() << " (" << result.computed_cells
              << " computed, " << result.reused_cells << " reused)\n"
              << "wrote          " << (fs::path(out_dir) / "results.csv").string() << "\n"
              << "wrote          " << (fs::path(out_dir) / "aggregates.csv").string() << "\n"
              << "wrote          " << (fs::path(out_dir) / "timing.csv").string() << "\n";
    return 0;
}

int cmd_compare(const std::string& results_dir, const std::string& out_dir) {
    std::map<std::string, mep::MeasuredResult> measured;
    std::vector<fs::path> candidates;
    if (fs::exists(fs::path(results_dir) / "result.json"))
        candidates.push_back(fs::path(results_dir) / "result.json");
    if (fs::is_directory(results_dir))
        for (const auto& entry : fs::directory_iterator(results_dir))
            if (entry.is_directory() && fs::exists(entry.path() / "result.json"))
                candidates.push_back(entry.path() / "result.json");
    if (candidates.empty())
        throw std::runtime_error("no result.json files under '" + results_dir + "'");

    for (const auto& path : candidates) {
        const auto j = nlohmann::json::parse(mep::read_text_file(path));
        mep::MeasuredResult m;
        m.fitness = j.at("best").at("fitness").get<double>();
        m.generation_of_best = j.at("generation_of_best").get<std::size_t>();
        m.metric = j.at("metric").get<std::string>();
        if (m.metric != "mmre")
            std::cerr << "warning: " << path.string() << " uses metric '" << m.metric
                      << "'; the reference table is compared under mmre\n";
        measured[j.at("dataset").get<std::string>()] = m;
    }

    const mep::ComparisonSummary summary =
        mep::compare_with_reference(measured, mep::reference_table());

    std::ostringstream csv;
    csv << "dataset,metric,reference_gp_fitness,measured_fitness,generation_of_best,outcome\n";
    for (const auto& row : summary.rows) {
        csv << row.dataset << ',' << measured.at(row.dataset).metric << ','
            << format_double(row.reference_fitness) << ',' << format_double(row.measured_fitness)
            << ',' << row.generation_of_best << ',' << row.outcome << '\n';
        std::cout << row.display_name << ": measured " << format_double(row.measured_fitness)
                  << " vs reference " << format_double(row.reference_fitness) << " -> "
                  << row.outcome << "\n";
    }
    for (const auto& m : summary.missing)
        std::cout << "warning: missing " << m << "\n";
    std::cout << "wins " << summary.wins << ", ties " << summary.ties << ", losses "
              << summary.losses << "\n";
    if (!out_dir.empty()) {
        mep::write_text_file(fs::path(out_dir) / "comparison.csv", csv.str());
        std::cout << "wrote          " << (fs::path(out_dir) / "comparison.csv").string() << "\n";
    }
    return 0;
}

int cmd_decode(const std::string& chromosome_file, long gene, bool all, const std::string& format,
               const std::string& out_dir) {
    const mep::ParsedChromosome parsed = mep::from_text(mep::read_text_file(chromosome_file));
    const mep::ValidationReport report = mep::validate(parsed.chromosome, parsed.primitives);
    if (!report.ok()) {
        for (const auto& v : report.violations)
            std::cerr << "invalid gene " << (v.gene + 1) << ": " << mep::violation_name(v.kind)
                      << " (" << v.detail << ")\n";
        return 1;
    }

    const std::size_t num_genes = parsed.chromosome.genes.size();
    std::vector<std::size_t> indices;
    if (all)
        for (std::size_t i = 0; i < num_genes; ++i)
            indices.push_back(i);
    else if (gene > 0)
        indices.push_back(static_cast<std::size_t>(gene - 1)); // 1-based on the command line
    else
        indices.push_back(num_genes - 1);

    for (std::size_t i : indices) {
        const mep::ExpressionTree tree = mep::decode(parsed.chromosome, parsed.primitives, i);
        std::cout << "E" << (i + 1) << " = " << mep::render_infix(tree) << "\n";
        if (format == "dot") {
            const std::string dot = mep::export_dot(tree);
            if (!out_dir.empty()) {
                const auto path = fs::path(out_dir) / ("E" + std::to_string(i + 1) + ".dot");
                mep::write_text_file(path, dot);
                std::cout << "wrote          " << path.string() << "\n";
            } else {
                std::cout << dot;
            }
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-expression evolution of software effort-estimation equations"};
    app.require_subcommand(1);
    // key=value file mirroring the long options; keys live in a section (or
    // dotted prefix) named after the subcommand, e.g. [run] gens=500.
    // Values given as flags override the file.
    app.set_config("--config", "",
                   "key=value file; section [run]/[grid]/... per subcommand; flags override");

    DatasetOptions data_opts;
    ParamOptions param_opts;
    std::string out_dir = "out";
    std::string formats = "json,csv,dot";

    auto* run_cmd = app.add_subcommand("run", "evolve one configuration against a dataset");
    add_dataset_options(run_cmd, data_opts);
    add_param_options(run_cmd, param_opts, true);
    run_cmd->add_option("--out", out_dir, "output directory");
    run_cmd->add_option("--format", formats, "comma list from json,csv,dot");

    std::string preset;
    std::vector<std::size_t> grid_pops, grid_gens;
    std::size_t num_seeds = 10;
    std::size_t threads = 1;
    auto* grid_cmd = app.add_subcommand("grid", "sweep population sizes and generation counts");
    add_dataset_options(grid_cmd, data_opts);
    add_param_options(grid_cmd, param_opts, false);
    grid_cmd->add_option("--preset", preset, "test1 (pops 10-40 x gens 25-250) or test2 (50-500 x 50-500)");
    grid_cmd->add_option("--pops", grid_pops, "population sizes")->delimiter(',');
    grid_cmd->add_option("--gens", grid_gens, "generation counts")->delimiter(',');
    grid_cmd->add_option("--seeds", num_seeds, "seeds per cell (0, 1, ...)");
    grid_cmd->add_option("--threads", threads, "worker threads");
    grid_cmd->add_option("--out", out_dir, "output directory");

    std::string results_dir;
    auto* compare_cmd =
        app.add_subcommand("compare", "compare run results against the bundled reference table");
    compare_cmd->add_option("--results", results_dir, "directory holding result.json files")
        ->required();
    compare_cmd->add_option("--out", out_dir, "output directory for comparison.csv")
        ->default_val("");

    std::string chromosome_file, decode_format = "txt";
    long gene = 0;
    bool decode_all = false;
    auto* decode_cmd = app.add_subcommand("decode", "decode chromosome text to expressions");
    decode_cmd->add_option("--chromosome", chromosome_file, "chromosome text file (lines '3: + 1, 2')")
        ->required();
    decode_cmd->add_option("--gene", gene, "1-based gene to decode (default: last)");
    decode_cmd->add_flag("--all", decode_all, "decode every gene");
    decode_cmd->add_option("--format", decode_format, "txt or dot");
    decode_cmd->add_option("--out", out_dir, "output directory for DOT files")->default_val("");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed())
            return cmd_run(data_opts, param_opts, out_dir, formats);
        if (grid_cmd->parsed())
            return cmd_grid(data_opts, param_opts, preset, grid_pops, grid_gens, num_seeds, out_dir,
                            threads);
        if (compare_cmd->parsed())
            return cmd_compare(results_dir, out_dir);
        if (decode_cmd->parsed())
            return cmd_decode(chromosome_file, gene, decode_all, decode_format, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
