#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tvpar/bandwidth.hpp"
#include "tvpar/dgp.hpp"
#include "tvpar/inference.hpp"

namespace tvpar {

/// Configuration for a coverage/length/bias study. Each replication draws a
/// path, selects nh_us on `nh_grid` (or uses `fixed_nh` in oracle mode),
/// and computes an InferencePoint at every tau.
struct StudyConfig {
    std::vector<DgpSpec> dgps;
    std::vector<double> taus = {0.2, 0.4, 0.6, 0.8, 1.0};
    int reps = 500;
    double alpha = 0.05;
    std::uint64_t seed = 1;
    std::vector<int> nh_grid;          // empty -> the simulation grid
    double c1 = 0.2;
    double c2 = 1.5;
    double a = 0.1;
    std::optional<int> fixed_nh;       // bypasses bandwidth selection
    bool collect_raw = false;
};

/// Aggregated metrics for one (dgp, tau) cell.
struct McCell {
    std::string dgp;
    double tau = 0.0;
    double rho_true = 0.0;
    double coverage = 0.0;
    double avg_length = 0.0;
    double abs_median_bias = 0.0;
    double mad_lower = 0.0;  // 2 E|mue - rho| 1{mue < rho}
    double mad_upper = 0.0;  // 2 E|mue - rho| 1{mue > rho}
    double median_nh_us = 0.0;
    int reps = 0;
    int failures = 0;
};

/// One replication-level record, kept when collect_raw is set.
struct RawRecord {
    std::string dgp;
    int rep = 0;
    double tau = 0.0;
    int nh_used = 0;
    double rho_true = 0.0;
    double rho_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double mue_point = 0.0;
    bool covered = false;
    bool valid = false;
};

struct StudyResult {
    std::vector<McCell> cells;
    std::vector<RawRecord> raw;
};

/// Runs the study. Replications are parallel with per-(dgp, rep) RNG
/// substreams and deterministic in-order reduction, so the output depends
/// only on the config and seed. Per-replication failures are counted,
/// never fatal.
StudyResult run_study(const StudyConfig& config, const QuantileTable& table);

void write_study_csv(const StudyResult& result, const std::string& path, bool with_raw);

}  // namespace tvpar
