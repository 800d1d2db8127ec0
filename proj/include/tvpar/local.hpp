#pragma once

#include <cstddef>
#include <span>

#include "tvpar/series.hpp"

namespace tvpar {

/// Observation window [t1, t2] (1-indexed, t1 >= 2 so the lagged value
/// Y_{t1-1} always exists). nh_nominal records the bandwidth that produced
/// the window; near a boundary the realized count can be smaller.
struct Window {
    std::size_t t1 = 0;
    std::size_t t2 = 0;
    int nh_nominal = 0;

    std::size_t count() const noexcept { return t2 - t1 + 1; }
};

/// Smallest window accepted for estimation. The regression has two
/// parameters; anything shorter gives a meaningless variance estimate.
inline constexpr std::size_t kMinWindowCount = 8;

/// Builds the window of about nh observations centered on floor(n*tau).
///
/// Interior: [floor(n tau) - floor(nh/2), floor(n tau) + floor(nh/2)].
/// Near a boundary, floor(nh/2) points are kept on the side with abundant
/// data and the other side extends only to the sample edge, so the realized
/// count can fall below nh. nh >= n selects the full sample [2, n]
/// (constant-parameter mode).
Window make_window(std::size_t n, double tau, int nh);

/// Local least-squares fit of Y_t on (1, Y_{t-1}) over a window.
/// sigma2_hat divides by the realized window count m; s2_hat is the
/// variance of rho_hat before the 1/m scaling, so the t-statistic is
/// sqrt(m) * (rho_hat - rho0) / sqrt(s2_hat).
struct LocalFit {
    double rho_hat = 0.0;
    double sigma2_hat = 0.0;
    double s2_hat = 0.0;
    double ybar = 0.0;
    double ybar_lag = 0.0;
    Window window;

    std::size_t count() const noexcept { return window.count(); }
};

LocalFit local_fit(const TimeSeries& series, const Window& window);

/// Same fit on a raw buffer holding Y_1..Y_N at indices 0..N-1; used by the
/// quantile simulator to avoid per-path allocations.
LocalFit local_fit_span(std::span<const double> values, const Window& window);

/// t-statistic for H0: rho = rho0, scaled by the realized window count.
double t_stat(const LocalFit& fit, double rho0);

}  // namespace tvpar
