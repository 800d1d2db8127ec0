#pragma once

#include <string>
#include <vector>

namespace tvpar {

/// Decimal formatting with 17 significant digits, enough for doubles to
/// round-trip exactly through the emitted CSVs.
std::string format_g17(double x);

/// A parsed input panel: a `date` column plus one or more numeric columns.
/// Missing or non-numeric cells are rejected (no imputation).
struct Panel {
    std::vector<std::string> dates;
    std::vector<std::string> names;                // value column names
    std::vector<std::vector<double>> columns;      // columns[j][row]

    std::size_t rows() const noexcept { return dates.size(); }
    const std::vector<double>& column(const std::string& name) const;
};

Panel read_panel_csv(const std::string& path);

}  // namespace tvpar
