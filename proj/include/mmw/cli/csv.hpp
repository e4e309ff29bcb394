#pragma once

#include <string>
#include <vector>

namespace mmw::cli {

// Shortest decimal rendering that reparses to the identical double.
std::string format_full(double value);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

}  // namespace mmw::cli
