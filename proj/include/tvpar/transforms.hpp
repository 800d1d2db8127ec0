#pragma once

#include <vector>

namespace tvpar {

/// Monthly inflation: 100 * (CPI_t - CPI_{t-1}) / CPI_{t-1}; length n-1.
std::vector<double> transform_inflation(const std::vector<double>& cpi);

/// Bilateral real exchange rate: nex * cpi_domestic / cpi_base, elementwise.
std::vector<double> transform_rex(const std::vector<double>& nex,
                                  const std::vector<double>& cpi_domestic,
                                  const std::vector<double>& cpi_base);

}  // namespace tvpar
