#include "mep/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mep/util.hpp"

namespace mep {

namespace {

const std::vector<DatasetSchema>& schema_registry() {
    static const std::vector<DatasetSchema> schemas = {
        {"albrecht", "Albrecht & Gaffney", "Effort", "AdjFP", {3, 6, 7, 22, 24}, {}},
        {"bailey_basili", "Bailey & Basili", "Effort", "KDLOC", {}, {}},
        {"desharnais", "Desharnais", "Effort", "PointsAjust", {38, 44, 66, 75}, {}},
        {"heiat", "Heiat & Heiat", "Effort", "FP", {}, {}},
        {"kemerer", "Kemerer", "EffortMM", "KSLOC", {}, {}},
        {"miyazaki", "Miyazaki", "MM", "KLOC", {}, {}},
    };
    return schemas;
}

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

bool is_missing_token(std::string_view cell) {
    return cell.empty() || cell == "?" || cell == "NA" || cell == "na" || cell == "NaN" ||
           cell == "nan";
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

// column names double as terminal identifiers in rendered expressions
std::string sanitize_identifier(const std::string& raw) {
    std::string out;
    for (char c : raw)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    if (out.empty())
        out = "_";
    if (std::isdigit(static_cast<unsigned char>(out[0])))
        out.insert(out.begin(), '_');
    return out;
}

double parse_numeric(const std::string& cell, std::size_t row, const std::string& column,
                     const std::string& file) {
    double value = 0;
    auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || p != cell.data() + cell.size())
        throw std::runtime_error(file + ": row " + std::to_string(row) + ", column '" + column +
                                 "': non-numeric cell '" + cell + "'");
    return value;
}

std::string join_rows(const std::vector<std::size_t>& rows) {
    std::ostringstream out;
    for (std::size_t i = 0; i < rows.size(); ++i)
        out << (i ? "," : "") << rows[i];
    return out.str();
}

} // namespace

const DatasetSchema& builtin_schema(std::string_view name) {
    for (const auto& s : schema_registry())
        if (s.name == name)
            return s;
    throw std::runtime_error("unknown dataset schema '" + std::string(name) +
                             "' (known: albrecht, bailey_basili, desharnais, heiat, kemerer, miyazaki)");
}

const std::vector<DatasetSchema>& builtin_schemas() { return schema_registry(); }

bool has_builtin_schema(std::string_view name) {
    for (const auto& s : schema_registry())
        if (s.name == name)
            return true;
    return false;
}

DatasetSchema generic_schema(std::string effort_column) {
    DatasetSchema s;
    s.name = "generic";
    s.display_name = "user dataset";
    s.effort_column = std::move(effort_column);
    return s;
}

std::size_t Dataset::column_index(std::string_view feature) const {
    for (std::size_t i = 0; i < feature_names.size(); ++i)
        if (feature_names[i] == feature)
            return i;
    throw std::runtime_error("dataset '" + name + "' has no column '" + std::string(feature) + "'");
}

std::vector<double> Dataset::efforts() const {
    std::vector<double> out;
    out.reserve(cases.size());
    for (const auto& c : cases)
        out.push_back(c.effort);
    return out;
}

std::vector<double> Dataset::column(std::string_view feature) const {
    const std::size_t idx = column_index(feature);
    std::vector<double> out;
    out.reserve(cases.size());
    for (const auto& c : cases)
        out.push_back(c.features[idx]);
    return out;
}

bool Dataset::has_missing() const {
    for (const auto& c : cases) {
        if (std::isnan(c.effort))
            return true;
        for (double v : c.features)
            if (std::isnan(v))
                return true;
    }
    return false;
}

Dataset load_csv(const std::filesystem::path& path, const DatasetSchema& schema) {
    const std::string file = path.filename().string();
    const std::string text = read_text_file(path);

    std::vector<std::string> lines;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            lines.push_back(line);
        }
    }
    while (!lines.empty() && trim(lines.back()).empty())
        lines.pop_back();
    if (lines.empty())
        throw std::runtime_error(file + ": empty file");
    if (lines.size() < 2)
        throw std::runtime_error(file + ": header only, no data rows");

    Dataset ds;
    ds.name = schema.name == "generic" ? path.stem().string() : schema.name;
    ds.provenance.source_path = path.string();

    auto header = split_csv_line(lines[0]);
    std::vector<std::string> columns;
    bool renamed = false;
    for (const auto& h : header) {
        std::string id = sanitize_identifier(h);
        renamed |= (id != h);
        if (std::find(columns.begin(), columns.end(), id) != columns.end())
            throw std::runtime_error(file + ": duplicate column name '" + id + "'");
        columns.push_back(id);
    }
    if (renamed)
        ds.provenance.notes.push_back("column names sanitized to identifier form");

    const std::string effort_col = sanitize_identifier(schema.effort_column);
    auto effort_it = std::find(columns.begin(), columns.end(), effort_col);
    if (effort_it == columns.end())
        throw std::runtime_error(file + ": effort column '" + schema.effort_column + "' not found");
    const std::size_t effort_idx = static_cast<std::size_t>(effort_it - columns.begin());

    std::vector<std::size_t> feature_idx;
    if (schema.feature_columns.empty()) {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (i != effort_idx)
                feature_idx.push_back(i);
    } else {
        for (const auto& want : schema.feature_columns) {
            auto it = std::find(columns.begin(), columns.end(), sanitize_identifier(want));
            if (it == columns.end())
                throw std::runtime_error(file + ": feature column '" + want + "' not found");
            feature_idx.push_back(static_cast<std::size_t>(it - columns.begin()));
        }
    }
    ds.effort_name = effort_col;
    for (std::size_t i : feature_idx)
        ds.feature_names.push_back(columns[i]);

    const auto row_flagged = [&](std::size_t row) {
        return std::find(schema.flagged_rows.begin(), schema.flagged_rows.end(), row) !=
               schema.flagged_rows.end();
    };

    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::size_t row = r; // 1-based data row
        if (trim(lines[r]).empty())
            throw std::runtime_error(file + ": row " + std::to_string(row) + ": blank line");
        auto cells = split_csv_line(lines[r]);
        if (cells.size() != columns.size())
            throw std::runtime_error(file + ": row " + std::to_string(row) + ": expected " +
                                     std::to_string(columns.size()) + " cells, got " +
                                     std::to_string(cells.size()));
        auto cell_value = [&](std::size_t col) {
            const std::string& cell = cells[col];
            if (is_missing_token(cell)) {
                if (!row_flagged(row))
                    throw std::runtime_error(file + ": row " + std::to_string(row) + ", column '" +
                                             columns[col] + "': missing value in a row not flagged incomplete");
                return kMissing;
            }
            return parse_numeric(cell, row, columns[col], file);
        };

        DatasetCase c;
        c.source_row = row;
        c.features.reserve(feature_idx.size());
        for (std::size_t i : feature_idx)
            c.features.push_back(cell_value(i));
        c.effort = cell_value(effort_idx);
        if (!std::isnan(c.effort) && c.effort <= 0)
            throw std::runtime_error(file + ": row " + std::to_string(row) +
                                     ": effort must be strictly positive, got " + cells[effort_idx]);
        ds.cases.push_back(std::move(c));
    }
    return ds;
}

Dataset drop_incomplete(const Dataset& dataset, const DatasetSchema& schema) {
    Dataset out = dataset;
    out.cases.clear();
    std::vector<std::size_t> dropped;
    for (const auto& c : dataset.cases) {
        const bool missing = std::isnan(c.effort) ||
                             std::any_of(c.features.begin(), c.features.end(),
                                         [](double v) { return std::isnan(v); });
        if (missing)
            dropped.push_back(c.source_row);
        else
            out.cases.push_back(c);
    }
    for (std::size_t row : dropped)
        out.provenance.dropped_rows.push_back(row);
    if (!dropped.empty() && dropped != schema.flagged_rows)
        out.provenance.notes.push_back("dropped rows {" + join_rows(dropped) +
                                       "} differ from schema-flagged rows {" +
                                       join_rows(schema.flagged_rows) + "}");
    if (dropped.empty() && !schema.flagged_rows.empty() && dataset.provenance.dropped_rows.empty())
        out.provenance.notes.push_back("schema flags rows {" + join_rows(schema.flagged_rows) +
                                       "} but the file is complete; all " +
                                       std::to_string(out.cases.size()) + " rows kept");
    if (out.cases.empty())
        throw std::runtime_error("dataset '" + dataset.name + "' has no complete rows");
    return out;
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path) {
    std::ostringstream out;
    for (const auto& name : dataset.feature_names)
        out << name << ',';
    out << dataset.effort_name << '\n';
    for (const auto& c : dataset.cases) {
        for (double v : c.features)
            out << (std::isnan(v) ? "?" : format_double(v)) << ',';
        out << format_double(c.effort) << '\n';
    }
    write_text_file(path, out.str());
}

std::vector<std::string> to_primitive_terminals(const Dataset& dataset) {
    if (dataset.feature_names.empty())
        throw std::runtime_error("dataset '" + dataset.name + "' has no feature columns");
    return dataset.feature_names;
}

} // namespace mep
