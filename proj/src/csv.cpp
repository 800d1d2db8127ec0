#include "tvpar/csv.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tvpar/errors.hpp"

namespace tvpar {

std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

const std::vector<double>& Panel::column(const std::string& name) const {
    for (std::size_t j = 0; j < names.size(); ++j)
        if (names[j] == name) return columns[j];
    raise(Errc::BadData, "no such column: " + name);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

Panel read_panel_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::BadData, "cannot open input: " + path);

    std::string line;
    if (!std::getline(in, line)) raise(Errc::BadData, "empty input file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_csv_line(line);
    std::size_t date_col = header.size();
    for (std::size_t j = 0; j < header.size(); ++j)
        if (trimmed(header[j]) == "date") date_col = j;
    if (date_col == header.size())
        raise(Errc::BadData, "input CSV must have a `date` column: " + path);
    if (header.size() < 2) raise(Errc::BadData, "input CSV needs at least one value column");

    Panel panel;
    for (std::size_t j = 0; j < header.size(); ++j)
        if (j != date_col) panel.names.push_back(trimmed(header[j]));
    panel.columns.resize(panel.names.size());

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trimmed(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            raise(Errc::BadData,
                  "row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                      " fields, expected " + std::to_string(header.size()));
        std::size_t out_col = 0;
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (j == date_col) {
                panel.dates.push_back(trimmed(fields[j]));
                continue;
            }
            const std::string cell = trimmed(fields[j]);
            if (cell.empty())
                raise(Errc::BadData, "missing value at row " + std::to_string(row) +
                                         ", column " + panel.names[out_col]);
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
                panel.columns[out_col].push_back(v);
            } catch (...) {
                raise(Errc::BadData, "non-numeric value `" + cell + "` at row " +
                                         std::to_string(row) + ", column " + panel.names[out_col]);
            }
            ++out_col;
        }
    }
    if (panel.dates.empty()) raise(Errc::BadData, "input CSV has no data rows: " + path);
    return panel;
}

}  // namespace tvpar
