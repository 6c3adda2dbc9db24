#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mep {

// Column layout expected of a named benchmark file. flagged_rows are the
// 1-based data rows known to carry missing values; missing cells anywhere
// else are load errors. An empty feature_columns list means "every numeric
// column except the effort column".
struct DatasetSchema {
    std::string name;
    std::string display_name;
    std::string effort_column;
    std::string size_column; // regressor used by the power-law baseline
    std::vector<std::size_t> flagged_rows;
    std::vector<std::string> feature_columns;
};

// Bundled schemas: albrecht, bailey_basili, desharnais, heiat, kemerer,
// miyazaki. Throws on unknown names.
const DatasetSchema& builtin_schema(std::string_view name);
const std::vector<DatasetSchema>& builtin_schemas();
bool has_builtin_schema(std::string_view name);
DatasetSchema generic_schema(std::string effort_column);

struct DatasetCase {
    std::vector<double> features; // ordered like Dataset::feature_names
    double effort = 0;            // > 0 once cleaned
    std::size_t source_row = 0;   // 1-based data row in the source file
};

struct Provenance {
    std::string source_path;
    std::vector<std::size_t> dropped_rows; // 1-based source rows
    std::vector<std::string> notes;
};

// Feature columns plus the effort target, one case per project. Missing
// values are carried as NaN between load_csv and drop_incomplete; a cleaned
// dataset holds none.
struct Dataset {
    std::string name;
    std::string effort_name;
    std::vector<std::string> feature_names;
    std::vector<DatasetCase> cases;
    Provenance provenance;

    std::size_t column_index(std::string_view feature) const; // throws if absent
    std::vector<double> efforts() const;
    std::vector<double> column(std::string_view feature) const;
    bool has_missing() const;
};

// Parses the header and numeric cells; missing cells ("" or "?" or "NA")
// are tolerated only in schema-flagged rows and kept as NaN. Rows are not
// dropped here. Errors name the offending row and column.
Dataset load_csv(const std::filesystem::path& path, const DatasetSchema& schema);

// Removes every case with a missing value and logs the dropped source rows.
// Running it twice is the same as running it once.
Dataset drop_incomplete(const Dataset& dataset, const DatasetSchema& schema);

// Deterministic round-trip writer (exact double formatting).
void write_csv(const Dataset& dataset, const std::filesystem::path& path);

// Terminal names for evolution: the feature columns, never the effort.
std::vector<std::string> to_primitive_terminals(const Dataset& dataset);

} // namespace mep
