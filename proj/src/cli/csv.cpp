#include "mmw/cli/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mmw/errors.hpp"

namespace mmw::cli {

std::string format_full(double value) {
    char buffer[40];
    // %.17g always round-trips; strip to %.15g / %.16g when they already do.
    for (int precision : {15, 16, 17}) {
        std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
        if (std::strtod(buffer, nullptr) == value) break;
    }
    return buffer;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw ConfigError("csv row width does not match the header");
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << format_full(row[c]);
        out << '\n';
    }
    if (!out) throw ConfigError("write to '" + path + "' failed");
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "' for reading");
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("'" + path + "' is empty");
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.columns.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row_stream(line);
        std::vector<double> row;
        while (std::getline(row_stream, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace mmw::cli
