#pragma once

#include <span>
#include <string>
#include <vector>

namespace heterovar {

//! Full-precision decimal rendering (17 significant digits): values written
//! through this round-trip bit-exactly through strtod.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;  // column-major
};

//! Strict CSV: comma separation, mandatory header row, '.' decimal point,
//! no quoting or locale handling.
CsvTable read_csv(const std::string& path);

void write_csv(const std::string& path, std::span<const std::string> header,
               std::span<const std::vector<double>> columns);

std::string csv_to_string(std::span<const std::string> header,
                          std::span<const std::vector<double>> columns);

//! Reads a two-column x,y file (by header name) into sorted-by-x arrays.
void read_xy_csv(const std::string& path, std::vector<double>& x, std::vector<double>& y);

} // namespace heterovar
