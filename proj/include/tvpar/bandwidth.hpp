#pragma once

#include <cstddef>
#include <vector>

#include "tvpar/dgp.hpp"
#include "tvpar/series.hpp"

namespace tvpar {

/// Candidate nh values for the forecast-error criterion.
struct BandwidthGrid {
    std::vector<int> nh_values;

    explicit BandwidthGrid(std::vector<int> values);

    /// Monte Carlo grid {140, 155, ..., 500, 650, 700, ..., 1500}.
    static BandwidthGrid simulation();

    /// Empirical grid: nh = round(h*n) for h in {.20,.22,...,.50} then
    /// {.55,.60,...,2.00}. Entries at or above n act as the full-window
    /// (constant-parameter) mode.
    static BandwidthGrid empirical(std::size_t n);
};

struct FeValue {
    double fe = 0.0;
    long skipped = 0;  // forecast dates dropped because a fitting block was degenerate
};

/// Average squared one-step rolling-forecast error FE_n(h).
///
/// For t > nh the forecast of Y_t comes from the LS fit of Y_s on
/// (1, Y_{s-1}) over the nh preceding observations; for t <= nh the fit uses
/// the initial block s = 2..min(nh+1, n) with s = t left out. The sum runs
/// over t = 2..n (t = 1 has no lagged predictor) and divides by the number
/// of forecast dates used. Entries with nh >= n-1 reduce every fit to the
/// leave-one-out full-sample block, which is what makes grid values up to
/// 2n meaningful.
FeValue rolling_forecast_errors(const TimeSeries& series, int nh);

struct BandwidthReport {
    std::vector<int> grid;        // evaluated nh values
    std::vector<double> fe;       // FE per grid entry
    std::vector<long> skipped;    // degenerate-block skips per entry
    int h_hat = 0;                // largest argmin of FE
    int h_us0 = 0;                // smallest nh with FE <= c1-quantile of FE
    double h_us1 = 0.0;           // c2 * n^(-a) * h_hat, real-valued
    int h_us = 0;                 // min of the two, floored, >= 8
    double c1 = 0.2;
    double c2 = 1.5;
    double a = 0.1;
    bool full_window_entries = false;  // grid reaches nh >= n
};

/// Data-dependent bandwidth with undersmoothing (defaults c1 = .2, c2 = 1.5,
/// a = 1/10). FE evaluation is parallel across grid entries.
BandwidthReport select_bandwidth(const TimeSeries& series, const BandwidthGrid& grid,
                                 double c1 = 0.2, double c2 = 1.5, double a = 0.1);

/// Selection rules applied to already-computed FE values: h_hat is the
/// largest argmin; h_us0 is the smallest nh whose FE is within the lowest
/// c1 fraction of the FE value range (the flatter the criterion near its
/// minimum, the smaller the undersmoothed choice); h_us1 = c2 * n^(-a) *
/// h_hat; h_us is the floor of their minimum, never below 8.
///
/// Candidates are limited to nh <= n/2 (when any such entry exists) so that
/// a majority of each candidate's forecasts are out-of-sample; entries
/// closer to the full sample score in-sample fit quality rather than
/// forecast quality. Their FE values are reported but never selected.
BandwidthReport select_from_fe(std::vector<int> grid, std::vector<double> fe,
                               std::vector<long> skipped, std::size_t n, double c1, double c2,
                               double a);

/// Infeasible empirical loss L_n(h): the same rolling fits evaluated against
/// the true DGP parameters. Simulation-only; serves as the selection oracle.
double empirical_loss(const TimeSeries& series, int nh, const DgpSpec& truth);

/// FE_n = L_n - 2 C_n + E_n computed in one scan with shared fits, where
/// C_n is the innovation cross term and E_n the average squared innovation.
/// The identity is exact up to rounding on any simulated series.
struct FeDecomposition {
    double fe = 0.0;
    double loss = 0.0;
    double cross = 0.0;
    double noise = 0.0;
    long skipped = 0;
};

FeDecomposition fe_decomposition(const TimeSeries& series, int nh, const DgpSpec& truth);

}  // namespace tvpar
