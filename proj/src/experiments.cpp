#include "mep/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "mep/util.hpp"

namespace mep {

using ordered_json = nlohmann::ordered_json;

const std::vector<ReferenceEntry>& reference_table() {
    static const std::vector<ReferenceEntry> table = {
        {"albrecht", "Albrecht & Gaffney", 0.548, 0.33910, 56},
        {"bailey_basili", "Bailey & Basili", 0.269, 0.14200, 45},
        {"desharnais", "Desharnais", 0.623, 0.38951, 67},
        {"heiat", "Heiat & Heiat", 0.087, 0.08570, 100},
        {"kemerer", "Kemerer", 0.584, 0.36854, 200},
        {"miyazaki", "Miyazaki", 0.506, 0.32420, 200},
    };
    return table;
}

std::uint64_t reference_table_checksum() {
    std::ostringstream canon;
    for (const auto& e : reference_table())
        canon << e.dataset << '|' << format_double(e.gp_fitness) << '|'
              << format_double(e.mep_fitness) << '|' << e.mep_generation << ';';
    return fnv1a64(canon.str());
}

EvolutionParams paper_params(std::uint64_t seed) {
    EvolutionParams p;
    p.population_size = 40;
    p.generations = 200;
    p.crossover_rate = 0.7;
    p.mutation_rate = 0.05;
    p.tournament_size = 2;
    p.crossover_kind = CrossoverKind::uniform;
    p.metric = Metric::mmre;
    p.num_genes = 16;
    p.seed = seed;
    return p;
}

RunResult run_paper_config(const Dataset& dataset, std::uint64_t seed) {
    PrimitiveSet primitives = PrimitiveSet::with_default_functions(to_primitive_terminals(dataset));
    return run(paper_params(seed), dataset, primitives);
}

namespace {

std::vector<std::uint64_t> default_seeds(std::size_t n) {
    std::vector<std::uint64_t> seeds(n);
    for (std::size_t i = 0; i < n; ++i)
        seeds[i] = i;
    return seeds;
}

} // namespace

GridSpec GridSpec::test1(std::size_t num_seeds) {
    GridSpec g;
    g.population_sizes = {10, 20, 30, 40};
    g.generation_counts = {25, 50, 75, 150, 250};
    g.seeds = default_seeds(num_seeds);
    g.base = paper_params(0);
    return g;
}

GridSpec GridSpec::test2(std::size_t num_seeds) {
    GridSpec g;
    g.population_sizes = {50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
    g.generation_counts = g.population_sizes;
    g.seeds = default_seeds(num_seeds);
    g.base = paper_params(0);
    return g;
}

std::size_t GridSpec::cell_count() const {
    return population_sizes.size() * generation_counts.size() * seeds.size();
}

namespace {

EvolutionParams cell_params(const GridSpec& grid, std::size_t pop, std::size_t gens,
                            std::uint64_t seed) {
    EvolutionParams p = grid.base;
    p.population_size = pop;
    p.generations = gens;
    p.seed = seed;
    return p;
}

std::string canonical_param_string(const EvolutionParams& p, const std::string& dataset_name) {
    std::ostringstream out;
    out << "dataset=" << dataset_name << ";pop=" << p.population_size << ";gens=" << p.generations
        << ";cx=" << format_double(p.crossover_rate) << ";mut=" << format_double(p.mutation_rate)
        << ";kind=" << crossover_kind_name(p.crossover_kind) << ";k=" << p.tournament_size
        << ";genes=" << p.num_genes << ";metric=" << metric_name(p.metric) << ";seed=" << p.seed
        << ";pfunc=" << format_double(p.function_probability) << ";spg=" << p.steps_per_generation;
    return out.str();
}

std::string cell_key(const EvolutionParams& p, const std::string& dataset_name) {
    std::ostringstream out;
    out << "p" << p.population_size << "_g" << p.generations << "_s" << p.seed << "_" << std::hex
        << fnv1a64(canonical_param_string(p, dataset_name));
    return out.str();
}

ordered_json row_to_json(const GridRow& row) {
    ordered_json j;
    j["population_size"] = row.population_size;
    j["generations"] = row.generations;
    j["seed"] = row.seed;
    j["best_fitness"] = row.best_fitness;
    j["generation_of_best"] = row.generation_of_best;
    j["best_expression"] = row.best_expression;
    j["error"] = row.error;
    return j;
}

bool row_from_json(const std::filesystem::path& path, GridRow& row) {
    try {
        ordered_json j = ordered_json::parse(read_text_file(path));
        row.population_size = j.at("population_size").get<std::size_t>();
        row.generations = j.at("generations").get<std::size_t>();
        row.seed = j.at("seed").get<std::uint64_t>();
        row.best_fitness = j.at("best_fitness").get<double>();
        row.generation_of_best = j.at("generation_of_best").get<std::size_t>();
        row.best_expression = j.at("best_expression").get<std::string>();
        row.error = j.at("error").get<std::string>();
        return true;
    } catch (const std::exception&) {
        return false; // treat unreadable cells as missing
    }
}

} // namespace

GridResult run_grid(const GridSpec& grid, const Dataset& dataset,
                    const std::optional<std::filesystem::path>& out_dir, std::size_t threads) {
    if (grid.population_sizes.empty() || grid.generation_counts.empty() || grid.seeds.empty())
        throw std::invalid_argument("grid lists must be non-empty");

    struct Cell {
        EvolutionParams params;
        std::string key;
    };
    std::vector<Cell> cells;
    for (std::size_t pop : grid.population_sizes)
        for (std::size_t gens : grid.generation_counts)
            for (std::uint64_t seed : grid.seeds) {
                EvolutionParams p = cell_params(grid, pop, gens, seed);
                cells.push_back({p, cell_key(p, dataset.name)});
            }

    const PrimitiveSet primitives =
        PrimitiveSet::with_default_functions(to_primitive_terminals(dataset));

    std::optional<std::filesystem::path> cells_dir;
    if (out_dir) {
        cells_dir = *out_dir / "cells";
        std::filesystem::create_directories(*cells_dir);
    }

    GridResult result;
    result.metric = grid.base.metric;
    result.rows.resize(cells.size());
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> computed{0}, reused{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size())
                return;
            const Cell& cell = cells[i];
            GridRow row;
            row.population_size = cell.params.population_size;
            row.generations = cell.params.generations;
            row.seed = cell.params.seed;

            const auto cell_file =
                cells_dir ? std::optional(*cells_dir / (cell.key + ".json")) : std::nullopt;
            if (cell_file && std::filesystem::exists(*cell_file) && row_from_json(*cell_file, row)) {
                row.reused = true;
                reused.fetch_add(1);
                result.rows[i] = std::move(row);
                continue;
            }

            const auto start = std::chrono::steady_clock::now();
            try {
                RunResult r = run(cell.params, dataset, primitives);
                row.best_fitness = r.best_fitness;
                row.generation_of_best = r.generation_of_best;
                row.best_expression = render_infix(r.best_expression);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            row.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
            computed.fetch_add(1);
            if (cell_file)
                write_text_file(*cell_file, row_to_json(row).dump(2) + "\n");
            result.rows[i] = std::move(row);
        }
    };

    threads = std::max<std::size_t>(1, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    result.computed_cells = computed.load();
    result.reused_cells = reused.load();
    std::sort(result.rows.begin(), result.rows.end(), [](const GridRow& a, const GridRow& b) {
        return std::tie(a.population_size, a.generations, a.seed) <
               std::tie(b.population_size, b.generations, b.seed);
    });
    if (out_dir)
        write_grid_csv(result, *out_dir);
    return result;
}

void write_grid_csv(const GridResult& result, const std::filesystem::path& out_dir) {
    const std::string metric(metric_name(result.metric));
    std::ostringstream rows_csv;
    rows_csv << "population_size,generations,seed,metric,best_fitness,generation_of_best,"
                "best_expression,error\n";
    for (const auto& r : result.rows)
        rows_csv << r.population_size << ',' << r.generations << ',' << r.seed << ',' << metric
                 << ',' << format_double(r.best_fitness) << ',' << r.generation_of_best << ",\""
                 << r.best_expression << "\",\"" << r.error << "\"\n";
    write_text_file(out_dir / "results.csv", rows_csv.str());

    // wall clock lives in a separate file so results.csv stays byte-identical
    // across reruns and execution orders
    std::ostringstream timing_csv;
    timing_csv << "population_size,generations,seed,wall_ms,reused\n";
    for (const auto& r : result.rows)
        timing_csv << r.population_size << ',' << r.generations << ',' << r.seed << ','
                   << format_double(r.wall_ms) << ',' << (r.reused ? 1 : 0) << '\n';
    write_text_file(out_dir / "timing.csv", timing_csv.str());

    std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> by_cell;
    for (const auto& r : result.rows)
        if (r.error.empty())
            by_cell[{r.population_size, r.generations}].push_back(r.best_fitness);
    std::ostringstream agg_csv;
    agg_csv << "population_size,generations,metric,median_best_fitness,min_best_fitness,runs\n";
    for (const auto& [cell, fits] : by_cell) {
        double best = fits.front();
        for (double f : fits)
            best = std::min(best, f);
        agg_csv << cell.first << ',' << cell.second << ',' << metric << ','
                << format_double(median(fits)) << ',' << format_double(best) << ',' << fits.size()
                << '\n';
    }
    write_text_file(out_dir / "aggregates.csv", agg_csv.str());
}

std::map<std::pair<std::size_t, std::size_t>, double> grid_medians(const GridResult& result) {
    std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> by_cell;
    for (const auto& r : result.rows)
        if (r.error.empty())
            by_cell[{r.population_size, r.generations}].push_back(r.best_fitness);
    std::map<std::pair<std::size_t, std::size_t>, double> medians;
    for (const auto& [cell, fits] : by_cell)
        medians[cell] = median(fits);
    return medians;
}

ComparisonSummary compare_with_reference(const std::map<std::string, MeasuredResult>& results,
                                         const std::vector<ReferenceEntry>& reference) {
    ComparisonSummary summary;
    for (const auto& ref : reference) {
        auto it = results.find(ref.dataset);
        if (it == results.end()) {
            summary.missing.push_back(ref.dataset);
            continue;
        }
        ComparisonRow row;
        row.dataset = ref.dataset;
        row.display_name = ref.display_name;
        row.reference_fitness = ref.gp_fitness;
        row.measured_fitness = it->second.fitness;
        row.generation_of_best = it->second.generation_of_best;
        if (row.measured_fitness < row.reference_fitness) {
            row.outcome = "win";
            ++summary.wins;
        } else if (row.measured_fitness == row.reference_fitness) {
            row.outcome = "tie";
            ++summary.ties;
        } else {
            row.outcome = "loss";
            ++summary.losses;
        }
        summary.rows.push_back(std::move(row));
    }
    for (const auto& [name, measured] : results) {
        (void)measured;
        bool known = false;
        for (const auto& ref : reference)
            known |= (ref.dataset == name);
        if (!known)
            summary.missing.push_back("(no reference for measured dataset '" + name + "')");
    }
    return summary;
}

BaselineScores score_baselines(const Dataset& dataset, const DatasetSchema& schema, Metric metric) {
    BaselineScores scores;
    const ConstantModel mean = mean_predictor(dataset);
    scores.mean_predictor_fitness = prediction_fitness(dataset, predict(mean, dataset), metric);
    try {
        PowerLawModel pl = fit_power_law(dataset, schema.size_column);
        scores.power_law_fitness =
            prediction_fitness(dataset, predict(pl, dataset, schema.size_column), metric);
        scores.power_law = pl;
    } catch (const std::exception& e) {
        scores.power_law_error = e.what();
    }
    return scores;
}

MultiSeedSummary multi_seed_summary(const Dataset& dataset, const DatasetSchema& schema,
                                    const std::vector<std::uint64_t>& seeds,
                                    const EvolutionParams& params) {
    if (seeds.empty())
        throw std::invalid_argument("multi_seed_summary needs at least one seed");
    MultiSeedSummary summary;
    summary.dataset = dataset.name;
    const PrimitiveSet primitives =
        PrimitiveSet::with_default_functions(to_primitive_terminals(dataset));

    std::optional<RunResult> best;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        EvolutionParams p = params;
        p.seed = seeds[i];
        RunResult r = run(p, dataset, primitives);
        summary.fitness_per_seed.push_back(r.best_fitness);
        if (!best || r.best_fitness < best->best_fitness) {
            summary.best_seed_index = i;
            best = std::move(r);
        }
    }
    summary.best_run = std::move(*best);
    summary.best_fitness = summary.best_run.best_fitness;
    summary.median_fitness = median(summary.fitness_per_seed);
    summary.baselines = score_baselines(dataset, schema, params.metric);
    return summary;
}

namespace {

ordered_json params_to_json(const EvolutionParams& p) {
    ordered_json j;
    j["population_size"] = p.population_size;
    j["generations"] = p.generations;
    j["crossover_rate"] = p.crossover_rate;
    j["mutation_rate"] = p.mutation_rate;
    j["crossover_kind"] = std::string(crossover_kind_name(p.crossover_kind));
    j["tournament_size"] = p.tournament_size;
    j["num_genes"] = p.num_genes;
    j["metric"] = std::string(metric_name(p.metric));
    j["seed"] = p.seed;
    j["function_probability"] = p.function_probability;
    j["steps_per_generation"] = p.effective_steps_per_generation();
    return j;
}

} // namespace

std::vector<std::filesystem::path> emit_report(const RunResult& result, const Dataset& dataset,
                                               const DatasetSchema& schema,
                                               const std::filesystem::path& out_dir,
                                               const std::vector<std::string>& formats) {
    std::filesystem::create_directories(out_dir);
    const PrimitiveSet primitives =
        PrimitiveSet::with_default_functions(to_primitive_terminals(dataset));
    std::vector<std::filesystem::path> written;

    auto wants = [&](std::string_view f) {
        for (const auto& w : formats)
            if (w == f)
                return true;
        return false;
    };

    if (wants("json")) {
        ordered_json j;
        j["dataset"] = dataset.name;
        j["cases"] = dataset.cases.size();
        j["source"] = dataset.provenance.source_path;
        j["metric"] = std::string(metric_name(result.params_echo.metric));
        j["generation_semantics"] =
            "one generation = steps_per_generation steady-state replacements";
        j["params"] = params_to_json(result.params_echo);
        ordered_json best;
        best["fitness"] = result.best_fitness;
        best["gene_index"] = result.best_gene_index;
        best["expression"] = render_infix(result.best_expression);
        {
            std::vector<std::string> lines;
            std::istringstream text(to_text(result.best_chromosome, primitives));
            std::string line;
            while (std::getline(text, line))
                lines.push_back(line);
            best["chromosome"] = lines;
        }
        j["best"] = best;
        j["generation_of_best"] = result.generation_of_best;
        j["initial_best_fitness"] = result.initial_best_fitness;
        j["total_evaluations"] = result.total_evaluations;
        j["fitness_trace"] = result.fitness_trace;
        if (!dataset.provenance.dropped_rows.empty())
            j["dropped_rows"] = dataset.provenance.dropped_rows;

        ordered_json baselines;
        const BaselineScores scores = score_baselines(dataset, schema, result.params_echo.metric);
        baselines["mean_predictor"] = {{"fitness", scores.mean_predictor_fitness}};
        if (scores.power_law)
            baselines["power_law"] = {{"a", scores.power_law->a},
                                      {"b", scores.power_law->b},
                                      {"size_column", schema.size_column},
                                      {"fitness", scores.power_law_fitness}};
        else
            baselines["power_law"] = {{"error", scores.power_law_error}};
        j["baselines"] = baselines;

        for (const auto& ref : reference_table())
            if (ref.dataset == dataset.name) {
                j["reference"] = {{"gp_fitness", ref.gp_fitness},
                                  {"mep_fitness", ref.mep_fitness},
                                  {"mep_generation", ref.mep_generation},
                                  {"note", "published values; aspiration only, not a tolerance"}};
                break;
            }

        const auto path = out_dir / "result.json";
        write_text_file(path, j.dump(2) + "\n");
        written.push_back(path);
    }

    if (wants("csv")) {
        std::ostringstream csv;
        csv << "generation,best_fitness,replacements\n";
        for (std::size_t g = 0; g < result.fitness_trace.size(); ++g)
            csv << (g + 1) << ',' << format_double(result.fitness_trace[g]) << ','
                << result.replacements_per_generation[g] << '\n';
        const auto path = out_dir / "trace.csv";
        write_text_file(path, csv.str());
        written.push_back(path);
    }

    if (wants("dot")) {
        const auto path = out_dir / "best.dot";
        write_text_file(path, export_dot(result.best_expression));
        written.push_back(path);
    }

    return written;
}

Dataset make_power_law_dataset(std::size_t num_cases, double a, double b, double size_min,
                               double size_max, std::uint64_t seed) {
    if (num_cases == 0)
        throw std::invalid_argument("synthetic dataset needs at least one case");
    Dataset ds;
    ds.name = "synthetic_power_law";
    ds.effort_name = "Effort";
    ds.feature_names = {"S"};
    ds.provenance.source_path = "(generated)";
    ds.provenance.notes.push_back("effort = " + format_double(a) + " * S^" + format_double(b));
    RandomStream rng(derive_seed(seed, {num_cases}));
    for (std::size_t i = 0; i < num_cases; ++i) {
        const double s = rng.uniform_real(size_min, size_max);
        DatasetCase c;
        c.features = {s};
        c.effort = a * std::pow(s, b);
        c.source_row = i + 1;
        ds.cases.push_back(std::move(c));
    }
    return ds;
}

} // namespace mep
