#include "table.hpp"

#include "scdens/error.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace scdens::cli {

void Table::add(std::string name, std::vector<double> values)
{
    if (!columns.empty() && values.size() != rows())
        mismatch_error("GridMismatch", "column '" + name + "' has a different length");
    names.push_back(std::move(name));
    columns.push_back(std::move(values));
}

const std::vector<double>* Table::find(const std::string& name) const
{
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return &columns[i];
    return nullptr;
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_text_atomic(const std::string& path, const std::string& text)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) config_error("OutputNotWritable", "cannot write '" + tmp.string() + "'");
        out << text;
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            config_error("OutputNotWritable", "short write to '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, target);
}

std::string to_csv(const Table& t)
{
    std::string s;
    for (std::size_t c = 0; c < t.names.size(); ++c) {
        if (c) s += ',';
        s += t.names[c];
    }
    s += '\n';
    for (std::size_t r = 0; r < t.rows(); ++r) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) s += ',';
            s += format_double(t.columns[c][r]);
        }
        s += '\n';
    }
    return s;
}

Table read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in) config_error("InputNotFound", "cannot open '" + path + "'");
    Table t;
    std::string line;
    if (!std::getline(in, line)) mismatch_error("EmptyInput", "'" + path + "' is empty");
    {
        std::stringstream hs(line);
        std::string name;
        while (std::getline(hs, name, ',')) {
            t.names.push_back(name);
            t.columns.emplace_back();
        }
    }
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string cell;
        std::size_t c = 0;
        while (std::getline(ls, cell, ',')) {
            if (c >= t.columns.size()) break;
            double v = NAN;
            if (cell != "nan") {
                const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
                if (ec != std::errc() || ptr != cell.data() + cell.size())
                    mismatch_error("BadCell", path + ":" + std::to_string(lineno) + ": '" + cell + "' is not a number");
            }
            t.columns[c++].push_back(v);
        }
        if (c != t.columns.size())
            mismatch_error("BadRow", path + ":" + std::to_string(lineno) + ": wrong number of cells");
    }
    return t;
}

std::string output_stem(const std::string& out)
{
    if (out.size() > 4 && out.ends_with(".csv")) return out.substr(0, out.size() - 4);
    return out;
}

void write_outputs(const std::string& stem, const Table& table, const nlohmann::json& sidecar)
{
    write_text_atomic(stem + ".csv", to_csv(table));
    write_text_atomic(stem + ".json", sidecar.dump(2) + "\n");
}

} // namespace scdens::cli
