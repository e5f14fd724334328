#include "heterovar/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "heterovar/errors.hpp"

namespace heterovar {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& text, const std::string& path, std::size_t line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || end != begin + text.size())
        throw invalid_config(path + ":" + std::to_string(line_no) +
                             ": cannot parse numeric field '" + text + "'");
    return v;
}

} // namespace

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_config("cannot open input file '" + path + "'");

    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        throw invalid_config(path + ": empty file, expected a header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split_line(line);
    if (table.header.empty()) throw invalid_config(path + ": empty header row");
    table.columns.resize(table.header.size());

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_line(line);
        if (fields.size() != table.header.size())
            throw invalid_config(path + ":" + std::to_string(line_no) + ": expected " +
                                 std::to_string(table.header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
        for (std::size_t c = 0; c < fields.size(); ++c)
            table.columns[c].push_back(parse_double(fields[c], path, line_no));
    }
    return table;
}

std::string csv_to_string(std::span<const std::string> header,
                          std::span<const std::vector<double>> columns) {
    if (header.size() != columns.size())
        throw invalid_config("csv write: header/column count mismatch");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns)
        if (col.size() != rows) throw invalid_config("csv write: ragged columns");

    std::string out;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out += ',';
        out += header[c];
    }
    out += '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_double(columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

void write_csv(const std::string& path, std::span<const std::string> header,
               std::span<const std::vector<double>> columns) {
    std::ofstream out(path, std::ios::binary);  // fixed newline policy
    if (!out) throw invalid_config("cannot open output file '" + path + "'");
    out << csv_to_string(header, columns);
    if (!out) throw invalid_config("failed writing output file '" + path + "'");
}

void read_xy_csv(const std::string& path, std::vector<double>& x, std::vector<double>& y) {
    const CsvTable table = read_csv(path);
    const auto find = [&](const std::string& name) -> std::size_t {
        const auto it = std::find(table.header.begin(), table.header.end(), name);
        if (it == table.header.end())
            throw invalid_config(path + ": missing required column '" + name + "'");
        return static_cast<std::size_t>(it - table.header.begin());
    };
    const std::size_t xi = find("x");
    const std::size_t yi = find("y");

    const std::size_t rows = table.columns[xi].size();
    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return table.columns[xi][a] < table.columns[xi][b];
    });
    x.resize(rows);
    y.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        x[r] = table.columns[xi][order[r]];
        y[r] = table.columns[yi][order[r]];
    }
}

} // namespace heterovar
