#include "tvpar/bandwidth.hpp"

#include <algorithm>
#include <cmath>

#include "tvpar/errors.hpp"
#include "tvpar/local.hpp"
#include "tvpar/math.hpp"
#include "tvpar/parallel.hpp"

namespace tvpar {

BandwidthGrid::BandwidthGrid(std::vector<int> values) : nh_values(std::move(values)) {
    if (nh_values.empty()) raise(Errc::InvalidGrid, "bandwidth grid is empty");
    for (std::size_t i = 0; i < nh_values.size(); ++i) {
        if (nh_values[i] < static_cast<int>(kMinWindowCount))
            raise(Errc::InvalidGrid, "bandwidth grid entries must be >= 8");
        if (i > 0 && nh_values[i] <= nh_values[i - 1])
            raise(Errc::InvalidGrid, "bandwidth grid must be strictly increasing");
    }
}

BandwidthGrid BandwidthGrid::simulation() {
    std::vector<int> values;
    for (int nh = 140; nh <= 500; nh += 15) values.push_back(nh);
    for (int nh = 650; nh <= 1500; nh += 50) values.push_back(nh);
    return BandwidthGrid(std::move(values));
}

BandwidthGrid BandwidthGrid::empirical(std::size_t n) {
    std::vector<int> values;
    const double dn = static_cast<double>(n);
    // h in percent units so the grid points are exact
    for (int hpct = 20; hpct <= 50; hpct += 2)
        values.push_back(static_cast<int>(std::lround(dn * hpct / 100.0)));
    for (int hpct = 55; hpct <= 200; hpct += 5)
        values.push_back(static_cast<int>(std::lround(dn * hpct / 100.0)));
    values.erase(std::remove_if(values.begin(), values.end(),
                                [](int v) { return v < static_cast<int>(kMinWindowCount); }),
                 values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.empty()) raise(Errc::InvalidGrid, "series too short for the empirical grid");
    return BandwidthGrid(std::move(values));
}

namespace {

struct BlockSums {
    double count = 0.0;
    double sx = 0.0;   // sum of Y_{s-1}
    double sy = 0.0;   // sum of Y_s
    double sxy = 0.0;  // sum of Y_s * Y_{s-1}
    double sxx = 0.0;  // sum of Y_{s-1}^2

    void add(double x, double y) {
        count += 1.0;
        sx += x;
        sy += y;
        sxy += x * y;
        sxx += x * x;
    }
    void remove(double x, double y) {
        count -= 1.0;
        sx -= x;
        sy -= y;
        sxy -= x * y;
        sxx -= x * x;
    }

    // fits (mu, rho); false when the block is too short or the lagged
    // regressor is (numerically) constant
    bool fit(double& mu, double& rho) const {
        if (count < 3.0) return false;
        const double denom = sxx - sx * sx / count;
        if (!(denom > 0.0) || denom <= sxx * 1e-12) return false;
        rho = (sxy - sx * sy / count) / denom;
        mu = (sy - rho * sx) / count;
        return true;
    }
};

// Recomputes sums over regression observations s in [s_lo, s_hi] with Kahan
// accumulation; used at scan start and periodically to bound sliding drift.
BlockSums fresh_sums(const std::vector<double>& v, std::size_t s_lo, std::size_t s_hi) {
    KahanSum sx, sy, sxy, sxx;
    for (std::size_t s = s_lo; s <= s_hi; ++s) {
        const double x = v[s - 2];
        const double y = v[s - 1];
        sx.add(x);
        sy.add(y);
        sxy.add(x * y);
        sxx.add(x * x);
    }
    BlockSums b;
    b.count = static_cast<double>(s_hi - s_lo + 1);
    b.sx = sx.value();
    b.sy = sy.value();
    b.sxy = sxy.value();
    b.sxx = sxx.value();
    return b;
}

// Recomputes sums over s in [s_lo, s_hi] skipping s = leave_out (0 = none).
BlockSums fresh_sums_excluding(const std::vector<double>& v, std::size_t s_lo, std::size_t s_hi,
                               std::size_t leave_out) {
    KahanSum sx, sy, sxy, sxx;
    double count = 0.0;
    for (std::size_t s = s_lo; s <= s_hi; ++s) {
        if (s == leave_out) continue;
        const double x = v[s - 2];
        const double y = v[s - 1];
        sx.add(x);
        sy.add(y);
        sxy.add(x * y);
        sxx.add(x * x);
        count += 1.0;
    }
    BlockSums b;
    b.count = count;
    b.sx = sx.value();
    b.sy = sy.value();
    b.sxy = sxy.value();
    b.sxx = sxx.value();
    return b;
}

// Walks t = 2..n calling cb(t, mu_hat, rho_hat) with the one-step-ahead fit
// for each t whose fitting block is well-posed. Returns the skip count.
//
// Slid sums can lose all significant bits when the series scale drifts by
// many orders of magnitude (removal cancels against what is left), so a
// failed fit is retried once with freshly accumulated sums before the date
// is declared degenerate.
template <typename Callback>
long rolling_scan(const std::vector<double>& v, int nh, Callback&& cb) {
    const std::size_t n = v.size();
    if (n < 10) raise(Errc::WindowTooSmall, "rolling forecasts need at least 10 observations");
    if (nh < static_cast<int>(kMinWindowCount))
        raise(Errc::InvalidGrid, "rolling forecasts need nh >= 8");

    const std::size_t nhs = static_cast<std::size_t>(nh);
    long skipped = 0;

    // initial segment: leave-one-out fits on the block s = 2..min(nh+1, n)
    const std::size_t init_hi = std::min(nhs + 1, n);
    const std::size_t init_t_end = std::min(nhs, n);
    const BlockSums base = fresh_sums(v, 2, init_hi);
    for (std::size_t t = 2; t <= init_t_end; ++t) {
        BlockSums b = base;
        b.remove(v[t - 2], v[t - 1]);
        double mu = 0.0, rho = 0.0;
        if (!b.fit(mu, rho)) {
            b = fresh_sums_excluding(v, 2, init_hi, t);
            if (!b.fit(mu, rho)) {
                ++skipped;
                continue;
            }
        }
        cb(t, mu, rho);
    }

    // rolling segment: block s in [max(2, t-nh), t-1], slid one step at a time
    if (nhs + 1 <= n) {
        std::size_t t = nhs + 1;
        BlockSums b = fresh_sums(v, 2, t - 1);
        std::size_t slides = 0;
        while (true) {
            double mu = 0.0, rho = 0.0;
            bool ok = b.fit(mu, rho);
            if (!ok) {
                b = fresh_sums(v, std::max<std::size_t>(2, t - nhs), t - 1);
                ok = b.fit(mu, rho);
            }
            if (ok)
                cb(t, mu, rho);
            else
                ++skipped;
            if (t == n) break;
            b.add(v[t - 2], v[t - 1]);  // s = t joins the block
            if (t >= nhs + 2) b.remove(v[t - nhs - 2], v[t - nhs - 1]);  // s = t-nh leaves
            ++t;
            if (++slides % 512 == 0) b = fresh_sums(v, std::max<std::size_t>(2, t - nhs), t - 1);
        }
    }
    return skipped;
}

}  // namespace

FeValue rolling_forecast_errors(const TimeSeries& series, int nh) {
    const auto& v = series.values();
    KahanSum sq;
    long used = 0;
    const long skipped = rolling_scan(v, nh, [&](std::size_t t, double mu, double rho) {
        const double err = v[t - 1] - mu - rho * v[t - 2];
        sq.add(err * err);
        ++used;
    });
    if (used == 0) raise(Errc::DegenerateRegressor, "every fitting block was degenerate");
    return FeValue{sq.value() / static_cast<double>(used), skipped};
}

FeDecomposition fe_decomposition(const TimeSeries& series, int nh, const DgpSpec& truth) {
    if (truth.n != series.size())
        raise(Errc::LengthMismatch, "DGP sample size does not match the series");
    const auto& v = series.values();
    const double dn = static_cast<double>(truth.n);
    KahanSum fe_sum, loss_sum, cross_sum, noise_sum;
    long used = 0;
    const long skipped = rolling_scan(v, nh, [&](std::size_t t, double mu, double rho) {
        const double u = static_cast<double>(t) / dn;
        const double mu_true = mu_star_function(truth, u);
        const double rho_true = rho_function(truth, u);
        const double err = v[t - 1] - mu - rho * v[t - 2];
        const double gap = (mu - mu_true) + v[t - 2] * (rho - rho_true);
        const double innov = v[t - 1] - mu_true - rho_true * v[t - 2];  // sigma_t * U_t
        fe_sum.add(err * err);
        loss_sum.add(gap * gap);
        cross_sum.add(innov * gap);
        noise_sum.add(innov * innov);
        ++used;
    });
    if (used == 0) raise(Errc::DegenerateRegressor, "every fitting block was degenerate");
    const double d = static_cast<double>(used);
    return FeDecomposition{fe_sum.value() / d, loss_sum.value() / d, cross_sum.value() / d,
                           noise_sum.value() / d, skipped};
}

double empirical_loss(const TimeSeries& series, int nh, const DgpSpec& truth) {
    return fe_decomposition(series, nh, truth).loss;
}

BandwidthReport select_from_fe(std::vector<int> grid, std::vector<double> fe,
                               std::vector<long> skipped, std::size_t n, double c1, double c2,
                               double a) {
    if (!(c1 > 0.0 && c1 < 1.0)) raise(Errc::BadConfig, "c1 must be in (0,1)");
    if (!(c2 > 0.0) || !(a > 0.0)) raise(Errc::BadConfig, "c2 and a must be positive");
    if (grid.empty() || grid.size() != fe.size())
        raise(Errc::InvalidGrid, "FE values do not match the grid");

    BandwidthReport report;
    report.grid = std::move(grid);
    report.fe = std::move(fe);
    report.skipped = std::move(skipped);
    report.c1 = c1;
    report.c2 = c2;
    report.a = a;
    const std::size_t k = report.grid.size();

    // Selection is restricted to entries with nh <= n/2, so at least half of
    // the forecast dates behind each candidate's FE are genuine out-of-sample
    // rolling forecasts. Beyond that point the leave-one-out initial block
    // dominates and FE degrades into an in-sample fit measure that can pull
    // the argmin toward the full sample on any series. FE values for the
    // larger entries are still reported. If the whole grid violates the
    // bound (very short series), the full grid is used.
    std::size_t k_sel = 0;
    while (k_sel < k && static_cast<std::size_t>(report.grid[k_sel]) * 2 <= n) ++k_sel;
    if (k_sel == 0) k_sel = k;

    // largest argmin (ties resolved upward)
    std::size_t argmin = 0;
    for (std::size_t i = 1; i < k_sel; ++i)
        if (report.fe[i] <= report.fe[argmin]) argmin = i;
    report.h_hat = report.grid[argmin];

    // Undersmoothing cut on the FE value scale: the flatter FE is at its
    // minimum, the deeper into small nh the cut reaches. A plain order
    // quantile of the FE values would land on a fixed index percentile for
    // any monotone curve and lose that adaptivity, in which case the
    // selected values no longer match the published magnitudes.
    double fe_min = report.fe[0], fe_max = report.fe[0];
    for (std::size_t i = 1; i < k_sel; ++i) {
        fe_min = std::min(fe_min, report.fe[i]);
        fe_max = std::max(fe_max, report.fe[i]);
    }
    const double threshold = fe_min + c1 * (fe_max - fe_min);
    std::size_t us0 = argmin;
    for (std::size_t i = 0; i < k_sel; ++i) {
        if (report.fe[i] <= threshold) {
            us0 = i;
            break;
        }
    }
    report.h_us0 = report.grid[us0];

    report.h_us1 = c2 * std::pow(static_cast<double>(n), -a) * static_cast<double>(report.h_hat);

    const double floored = std::floor(std::min(static_cast<double>(report.h_us0), report.h_us1));
    report.h_us = std::max(static_cast<int>(kMinWindowCount), static_cast<int>(floored));
    report.full_window_entries = static_cast<std::size_t>(report.grid.back()) >= n;
    return report;
}

BandwidthReport select_bandwidth(const TimeSeries& series, const BandwidthGrid& grid, double c1,
                                 double c2, double a) {
    const std::size_t k = grid.nh_values.size();
    std::vector<double> fe(k);
    std::vector<long> skipped(k);

    parallel_for(k, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const FeValue fv = rolling_forecast_errors(series, grid.nh_values[i]);
            fe[i] = fv.fe;
            skipped[i] = fv.skipped;
        }
    });

    return select_from_fe(grid.nh_values, std::move(fe), std::move(skipped), series.size(), c1,
                          c2, a);
}

}  // namespace tvpar
