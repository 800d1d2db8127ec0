#include "tvpar/transforms.hpp"

#include "tvpar/errors.hpp"

namespace tvpar {

std::vector<double> transform_inflation(const std::vector<double>& cpi) {
    if (cpi.size() < 2) raise(Errc::LengthMismatch, "inflation needs at least 2 CPI values");
    for (const double v : cpi)
        if (!(v > 0.0)) raise(Errc::NonpositiveCpi, "CPI values must be positive");
    std::vector<double> out(cpi.size() - 1);
    for (std::size_t t = 1; t < cpi.size(); ++t)
        out[t - 1] = 100.0 * (cpi[t] - cpi[t - 1]) / cpi[t - 1];
    return out;
}

std::vector<double> transform_rex(const std::vector<double>& nex,
                                  const std::vector<double>& cpi_domestic,
                                  const std::vector<double>& cpi_base) {
    if (nex.size() != cpi_domestic.size() || nex.size() != cpi_base.size())
        raise(Errc::LengthMismatch, "real exchange rate inputs must have equal lengths");
    std::vector<double> out(nex.size());
    for (std::size_t t = 0; t < nex.size(); ++t) {
        if (!(nex[t] > 0.0 && cpi_domestic[t] > 0.0 && cpi_base[t] > 0.0))
            raise(Errc::NonpositiveInput, "real exchange rate inputs must be positive");
        out[t] = nex[t] * cpi_domestic[t] / cpi_base[t];
    }
    return out;
}

}  // namespace tvpar
