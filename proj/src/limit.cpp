#include "tvpar/limit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "tvpar/csv.hpp"
#include "tvpar/errors.hpp"
#include "tvpar/math.hpp"

#include "json.hpp"

namespace tvpar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Quantiles of J_psi for alpha in {.025, .05, .5, .95, .975}, simulated from
// 300,000 paths of length 25,000 with stationary start-up.
constexpr int kEmbeddedRows = 39;
constexpr double kEmbeddedPsi[kEmbeddedRows] = {
    0,   0.2, 0.4, 0.6, 0.8, 1,  1.4, 1.8, 2.2, 2.6, 3,  3.4, 3.8,
    4.2, 4.6, 5,   6,   7,   8,  9,   10,  11,  12,  13, 14,  15,
    20,  25,  30,  40,  50,  60, 70,  80,  90,  100, 200, 300, 500};

constexpr double kEmbeddedValues[kEmbeddedRows][5] = {
    {-3.12, -2.86, -1.57, -0.09, 0.23}, {-3.09, -2.83, -1.51, -0.02, 0.30},
    {-3.05, -2.79, -1.47, 0.03, 0.36},  {-3.03, -2.76, -1.42, 0.08, 0.40},
    {-2.99, -2.72, -1.37, 0.13, 0.45},  {-2.98, -2.70, -1.34, 0.17, 0.49},
    {-2.93, -2.65, -1.26, 0.24, 0.55},  {-2.89, -2.61, -1.20, 0.31, 0.63},
    {-2.85, -2.57, -1.14, 0.37, 0.69},  {-2.82, -2.53, -1.08, 0.42, 0.74},
    {-2.79, -2.51, -1.03, 0.48, 0.79},  {-2.77, -2.48, -1.00, 0.53, 0.84},
    {-2.74, -2.46, -0.96, 0.56, 0.87},  {-2.72, -2.44, -0.92, 0.60, 0.91},
    {-2.70, -2.41, -0.90, 0.64, 0.94},  {-2.68, -2.39, -0.86, 0.68, 0.99},
    {-2.65, -2.35, -0.81, 0.75, 1.05},  {-2.60, -2.31, -0.75, 0.82, 1.12},
    {-2.58, -2.28, -0.71, 0.86, 1.17},  {-2.56, -2.26, -0.68, 0.91, 1.22},
    {-2.54, -2.23, -0.65, 0.95, 1.25},  {-2.51, -2.21, -0.62, 0.98, 1.29},
    {-2.50, -2.19, -0.59, 1.02, 1.32},  {-2.48, -2.18, -0.58, 1.04, 1.34},
    {-2.46, -2.15, -0.55, 1.05, 1.37},  {-2.45, -2.14, -0.54, 1.08, 1.39},
    {-2.39, -2.08, -0.47, 1.15, 1.46},  {-2.35, -2.05, -0.42, 1.20, 1.51},
    {-2.32, -2.02, -0.39, 1.24, 1.56},  {-2.28, -1.96, -0.33, 1.30, 1.61},
    {-2.25, -1.94, -0.30, 1.33, 1.65},  {-2.23, -1.91, -0.27, 1.37, 1.67},
    {-2.20, -1.89, -0.25, 1.39, 1.71},  {-2.19, -1.88, -0.23, 1.40, 1.72},
    {-2.17, -1.86, -0.23, 1.41, 1.72},  {-2.17, -1.85, -0.21, 1.43, 1.74},
    {-2.11, -1.80, -0.15, 1.49, 1.80},  {-2.08, -1.76, -0.12, 1.52, 1.83},
    {-2.05, -1.74, -0.09, 1.55, 1.87}};

constexpr double kEmbeddedAlphas[5] = {0.025, 0.05, 0.5, 0.95, 0.975};

}  // namespace

QuantileTable::QuantileTable(std::vector<double> psi_grid, std::vector<double> alphas,
                             std::vector<std::vector<double>> values,
                             TableProvenance provenance)
    : psi_grid_(std::move(psi_grid)),
      alphas_(std::move(alphas)),
      values_(std::move(values)),
      provenance_(provenance) {
    if (psi_grid_.empty() || alphas_.empty()) raise(Errc::InvalidGrid, "empty quantile table");
    for (std::size_t i = 0; i < psi_grid_.size(); ++i) {
        if (!(psi_grid_[i] >= 0.0) || !std::isfinite(psi_grid_[i]))
            raise(Errc::InvalidGrid, "psi grid entries must be finite and nonnegative");
        if (i > 0 && !(psi_grid_[i] > psi_grid_[i - 1]))
            raise(Errc::InvalidGrid, "psi grid must be strictly increasing");
    }
    for (std::size_t i = 0; i < alphas_.size(); ++i) {
        if (!(alphas_[i] > 0.0 && alphas_[i] < 1.0))
            raise(Errc::InvalidGrid, "alpha levels must be in (0,1)");
        if (i > 0 && !(alphas_[i] > alphas_[i - 1]))
            raise(Errc::InvalidGrid, "alpha levels must be strictly increasing");
    }
    if (values_.size() != psi_grid_.size()) raise(Errc::InvalidGrid, "table row count mismatch");
    for (const auto& row : values_) {
        if (row.size() != alphas_.size()) raise(Errc::InvalidGrid, "table column count mismatch");
        for (std::size_t j = 1; j < row.size(); ++j)
            if (row[j] < row[j - 1])
                raise(Errc::InvalidGrid, "quantiles must be nondecreasing in alpha");
    }
    log1p_psi_.resize(psi_grid_.size());
    for (std::size_t i = 0; i < psi_grid_.size(); ++i) log1p_psi_[i] = std::log1p(psi_grid_[i]);
}

const QuantileTable& QuantileTable::embedded() {
    static const QuantileTable table = [] {
        std::vector<double> psi(kEmbeddedPsi, kEmbeddedPsi + kEmbeddedRows);
        std::vector<double> alphas(kEmbeddedAlphas, kEmbeddedAlphas + 5);
        std::vector<std::vector<double>> values(kEmbeddedRows);
        for (int i = 0; i < kEmbeddedRows; ++i)
            values[i].assign(kEmbeddedValues[i], kEmbeddedValues[i] + 5);
        TableProvenance prov;
        prov.kind = TableProvenance::Kind::Embedded;
        prov.num_paths = 300000;
        prov.path_length = 25000;
        return QuantileTable(std::move(psi), std::move(alphas), std::move(values), prov);
    }();
    return table;
}

std::size_t QuantileTable::alpha_index(double alpha) const {
    for (std::size_t j = 0; j < alphas_.size(); ++j)
        if (std::abs(alphas_[j] - alpha) < 1e-9) return j;
    raise(Errc::AlphaNotInTable, "alpha level not present in quantile table");
}

double psi_of(double nh_effective, double rho0) {
    if (!(nh_effective > 0.0)) raise(Errc::InvalidGrid, "psi_of: nh must be positive");
    if (rho0 > 1.0) raise(Errc::RhoAboveOne, "psi_of: rho0 must be <= 1");
    if (rho0 <= 0.0) return kInf;
    const double psi = -nh_effective * std::log(rho0);
    return psi < 0.0 ? 0.0 : psi;  // normalizes -0.0 at rho0 = 1
}

double critical_value(const QuantileTable& table, double psi, double alpha) {
    const std::size_t j = table.alpha_index(alpha);
    if (std::isinf(psi)) return normal_quantile(alpha);
    if (!(psi >= 0.0)) raise(Errc::InvalidGrid, "critical_value: psi must be >= 0");

    const auto& grid = table.psi_grid();
    const double psi_max = grid.back();
    if (psi > psi_max) {
        // between the last finite row and the normal limit, linear in 1/(1+psi)
        const double w = (1.0 + psi_max) / (1.0 + psi);
        const double c_inf = normal_quantile(alpha);
        const double c_max = table.value(grid.size() - 1, j);
        return c_inf + (c_max - c_inf) * w;
    }

    const auto it = std::lower_bound(grid.begin(), grid.end(), psi);
    std::size_t hi = static_cast<std::size_t>(it - grid.begin());
    if (hi < grid.size() && grid[hi] == psi) return table.value(hi, j);
    // psi < grid.front() cannot happen (grid starts at 0 and psi >= 0)
    const std::size_t lo = hi - 1;
    const double z = std::log1p(psi);
    const double z_lo = table.log1p_psi()[lo];
    const double z_hi = table.log1p_psi()[hi];
    const double w = (z - z_lo) / (z_hi - z_lo);
    return (1.0 - w) * table.value(lo, j) + w * table.value(hi, j);
}

void write_table_csv(const QuantileTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) raise(Errc::BadData, "cannot open for writing: " + path);
    out << "psi,alpha,value\n";
    for (std::size_t i = 0; i < table.psi_grid().size(); ++i)
        for (std::size_t j = 0; j < table.alphas().size(); ++j)
            out << format_g17(table.psi_grid()[i]) << ',' << format_g17(table.alphas()[j]) << ','
                << format_g17(table.value(i, j)) << '\n';
    for (std::size_t j = 0; j < table.alphas().size(); ++j)
        out << "inf," << format_g17(table.alphas()[j]) << ','
            << format_g17(normal_quantile(table.alphas()[j])) << '\n';
    out.close();

    nlohmann::json sidecar;
    const auto& prov = table.provenance();
    switch (prov.kind) {
        case TableProvenance::Kind::Embedded: sidecar["kind"] = "embedded"; break;
        case TableProvenance::Kind::Simulated: sidecar["kind"] = "simulated"; break;
        case TableProvenance::Kind::File: sidecar["kind"] = "file"; break;
    }
    sidecar["num_paths"] = prov.num_paths;
    sidecar["path_length"] = prov.path_length;
    sidecar["seed"] = prov.seed;
    std::ofstream meta(path + ".json");
    if (!meta) raise(Errc::BadData, "cannot open for writing: " + path + ".json");
    meta << sidecar.dump(2) << '\n';
}

QuantileTable read_table_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::BadData, "cannot open table: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("psi,alpha,value", 0) != 0)
        raise(Errc::BadData, "table CSV must start with header `psi,alpha,value`: " + path);

    std::map<double, std::map<double, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string psi_s, alpha_s, value_s;
        if (!std::getline(ss, psi_s, ',') || !std::getline(ss, alpha_s, ',') ||
            !std::getline(ss, value_s))
            raise(Errc::BadData, "malformed table row: " + line);
        if (psi_s == "inf" || psi_s == "Inf" || psi_s == "INF") continue;  // analytic row
        rows[std::stod(psi_s)][std::stod(alpha_s)] = std::stod(value_s);
    }
    if (rows.empty()) raise(Errc::BadData, "table CSV has no finite psi rows: " + path);

    std::vector<double> psi_grid;
    psi_grid.reserve(rows.size());
    for (const auto& [psi, _] : rows) psi_grid.push_back(psi);

    std::vector<double> alphas;
    for (const auto& [alpha, _] : rows.begin()->second) alphas.push_back(alpha);

    std::vector<std::vector<double>> values;
    values.reserve(rows.size());
    for (const auto& [psi, cols] : rows) {
        if (cols.size() != alphas.size())
            raise(Errc::BadData, "ragged quantile table (rows have different alpha sets)");
        std::vector<double> row;
        row.reserve(alphas.size());
        std::size_t j = 0;
        for (const auto& [alpha, value] : cols) {
            if (std::abs(alpha - alphas[j]) > 1e-12)
                raise(Errc::BadData, "ragged quantile table (alpha mismatch across rows)");
            row.push_back(value);
            ++j;
        }
        values.push_back(std::move(row));
    }

    TableProvenance prov;
    prov.kind = TableProvenance::Kind::File;
    std::ifstream meta(path + ".json");
    if (meta) {
        try {
            nlohmann::json sidecar = nlohmann::json::parse(meta);
            prov.num_paths = sidecar.value("num_paths", 0L);
            prov.path_length = sidecar.value("path_length", 0L);
            prov.seed = sidecar.value("seed", static_cast<std::uint64_t>(0));
        } catch (...) {
            // sidecar is informational only
        }
    }
    return QuantileTable(std::move(psi_grid), std::move(alphas), std::move(values), prov);
}

}  // namespace tvpar
