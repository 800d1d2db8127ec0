#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tvpar/arp.hpp"
#include "tvpar/bandwidth.hpp"
#include "tvpar/inference.hpp"

namespace tvpar {

enum class TransformKind { None, Inflation, RealExchangeRate };
enum class TableSource { Embedded, File, Simulate };

/// Which residuals feed the Ljung-Box diagnostics: the constant-parameter
/// full-sample ADF fit (default), or in-window residuals of the local fits
/// at tau in {.2,.4,.6,.8,1} on the selected nh_us window, concatenated.
enum class LbResidualMode { ConstantFit, TvpFit };

struct RunConfig {
    std::string input_path;
    TransformKind transform = TransformKind::None;
    std::string column;  // value column for none/inflation
    std::string rex_nex;
    std::string rex_cpi;
    std::string rex_base;

    std::vector<double> taus;  // empty: per-date sweep with tau_t = t/n
    int p = 1;                 // 1, 6 or 12; 0 = pick by Ljung-Box
    double alpha = 0.1;

    std::vector<int> nh_grid;  // empty: empirical grid for the series length
    double c1 = 0.2;
    double c2 = 1.5;
    double a = 0.1;
    std::optional<int> fixed_nh;  // bypasses bandwidth selection

    std::uint64_t seed = 1;
    TableSource table_source = TableSource::Embedded;
    std::string table_path;  // file path, or CSV output path when simulating
    long table_paths = 50000;
    long table_path_length = 5000;

    bool robustness = false;          // adds a block at floor(1.5 * nh_us)
    bool constant_benchmark = false;  // adds a block at nh = 2n
    LbResidualMode lb_mode = LbResidualMode::ConstantFit;

    std::string output_prefix = "tvpar_run";
};

struct AnalyzeSummary {
    std::size_t n = 0;
    BandwidthReport bandwidth;
    int nh_used = 0;
    int p_used = 1;
    std::vector<std::pair<int, LjungBoxResult>> ljung_box;  // per candidate p
    std::string csv_path;
    std::string json_path;
    std::size_t rows_written = 0;
};

/// Full pipeline: ingest -> transform -> bandwidth selection -> per-date (or
/// per-tau) trajectory of CIs and MUEs -> CSV rows
/// `date,tau,rho_hat,mue,ci_low,ci_high,nh_used,flags` plus a JSON run
/// summary. Deterministic given the input bytes, config, and seed.
AnalyzeSummary analyze(const RunConfig& config);

/// The transformed series the pipeline would analyze (exposed for tests and
/// the ci/bandwidth/ljung-box subcommands).
TimeSeries load_series(const RunConfig& config);

QuantileTable load_table(const RunConfig& config);

}  // namespace tvpar
