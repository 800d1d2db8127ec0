#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tvpar {

/// Where a quantile table came from; written to the JSON sidecar on export.
struct TableProvenance {
    enum class Kind { Embedded, Simulated, File };
    Kind kind = Kind::Embedded;
    long num_paths = 0;
    long path_length = 0;
    std::uint64_t seed = 0;
};

/// Quantiles c_psi(alpha) of the limit law J_psi on a finite psi grid.
/// The psi = infinity row is standard normal and evaluated analytically.
class QuantileTable {
public:
    QuantileTable(std::vector<double> psi_grid, std::vector<double> alphas,
                  std::vector<std::vector<double>> values, TableProvenance provenance);

    /// Table shipped with the library: 39 psi rows (0..500), alphas
    /// {.025,.05,.5,.95,.975}, simulated at 300k paths of length 25k.
    static const QuantileTable& embedded();

    const std::vector<double>& psi_grid() const noexcept { return psi_grid_; }
    const std::vector<double>& alphas() const noexcept { return alphas_; }
    const TableProvenance& provenance() const noexcept { return provenance_; }

    double value(std::size_t psi_index, std::size_t alpha_index) const {
        return values_[psi_index][alpha_index];
    }

    /// Index of alpha within the table (tolerance 1e-9); throws AlphaNotInTable.
    std::size_t alpha_index(double alpha) const;

    /// Precomputed log(1 + psi) per grid row, used by the interpolation.
    const std::vector<double>& log1p_psi() const noexcept { return log1p_psi_; }

private:
    std::vector<double> psi_grid_;
    std::vector<double> alphas_;
    std::vector<std::vector<double>> values_;  // values_[psi][alpha]
    std::vector<double> log1p_psi_;
    TableProvenance provenance_;
};

/// Local-to-unity drift implied by nh and a null value rho0:
/// -nh*ln(rho0) for rho0 in (0,1], +infinity for rho0 <= 0.
/// rho0 > 1 is rejected (RhoAboveOne).
double psi_of(double nh_effective, double rho0);

/// c_psi(alpha). Exact at grid rows; piecewise linear in log(1+psi) between
/// rows; linear in 1/(1+psi) between the last finite row and the normal
/// limit for psi above the grid; psi = infinity gives the normal quantile.
double critical_value(const QuantileTable& table, double psi, double alpha);

/// Regenerates the table by Monte Carlo: for each psi, `num_paths`
/// constant-coefficient AR(1) paths of length `path_length` with
/// rho = exp(-psi/path_length), standard normal innovations and a
/// stationary start (Y0 = 0 when psi = 0); the table entry is the empirical
/// alpha-quantile of the full-sample t-statistics. Deterministic given the
/// seed and parallelized over paths.
QuantileTable simulate_quantiles(const std::vector<double>& psi_grid,
                                 const std::vector<double>& alphas, long num_paths,
                                 long path_length, std::uint64_t seed);

/// CSV with header `psi,alpha,value` (psi=inf row included) plus a JSON
/// sidecar `<path>.json` recording provenance.
void write_table_csv(const QuantileTable& table, const std::string& path);
QuantileTable read_table_csv(const std::string& path);

}  // namespace tvpar
