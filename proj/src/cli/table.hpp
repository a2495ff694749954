#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace scdens::cli {

// Column-major numeric table; the first column is the coordinate.
struct Table {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    void add(std::string name, std::vector<double> values);
    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    const std::vector<double>* find(const std::string& name) const;
};

// Shortest decimal that reads back to the same double.
std::string format_double(double v);

// Written to a temporary sibling and renamed into place.
void write_text_atomic(const std::string& path, const std::string& text);
std::string to_csv(const Table& t);
Table read_csv(const std::string& path);

// "dir/name" or "dir/name.csv" -> "dir/name"
std::string output_stem(const std::string& out);

void write_outputs(const std::string& stem, const Table& table, const nlohmann::json& sidecar);

} // namespace scdens::cli
