#include "tvpar/inference.hpp"

#include <cmath>
#include <limits>

#include "tvpar/errors.hpp"

namespace tvpar {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

Rho0Grid Rho0Grid::default_grid() {
    Rho0Grid grid;
    grid.points.reserve(441);
    // coarse block -1.000..0.945 step .005, fine block 0.950..1.000 step .001;
    // integer milli-units keep the points exact
    for (int k = -1000; k <= 945; k += 5) grid.points.push_back(k / 1000.0);
    for (int k = 950; k <= 1000; k += 1) grid.points.push_back(k / 1000.0);
    return grid;
}

Rho0Grid Rho0Grid::refined() const {
    Rho0Grid out;
    out.points.reserve(points.size() * 2);
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        out.points.push_back(points[i]);
        out.points.push_back(0.5 * (points[i] + points[i + 1]));
    }
    out.points.push_back(points.back());
    return out;
}

namespace {

struct GridScan {
    CiResult ci;
    MueResult mue;
};

// Single pass over the rho0 grid evaluating the two-sided acceptance set and
// both one-sided .5 sets. T_n(rho0) is affine in rho0, so only the critical
// values need per-point work.
GridScan scan_grid(const LocalFit& fit, const QuantileTable& table, const Rho0Grid& grid,
                   double alpha, bool want_ci) {
    if (grid.points.empty()) raise(Errc::InvalidGrid, "empty rho0 grid");
    const double m = static_cast<double>(fit.count());
    const double scale = std::sqrt(m) / std::sqrt(fit.s2_hat);
    if (!(fit.s2_hat > 0.0)) raise(Errc::ZeroStandardError, "inference on a noiseless fit");

    const double a_lo = alpha / 2.0;
    const double a_hi = 1.0 - alpha / 2.0;
    if (want_ci) {
        table.alpha_index(a_lo);  // fail fast with AlphaNotInTable
        table.alpha_index(a_hi);
    }
    table.alpha_index(0.5);

    GridScan out;
    std::size_t first_acc = 0, last_acc = 0, n_acc = 0;
    bool have_up = false, have_low = false;
    double up = 0.0, low = 0.0;

    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const double rho0 = grid.points[i];
        const double t = scale * (fit.rho_hat - rho0);
        const double psi = psi_of(m, rho0);
        const double c_med = critical_value(table, psi, 0.5);

        if (c_med <= t) {  // in the upper-bound .5 set
            up = rho0;
            have_up = true;
        }
        if (!have_low && t <= c_med) {  // first point of the lower-bound .5 set
            low = rho0;
            have_low = true;
        }

        if (want_ci) {
            const double c_lo = critical_value(table, psi, a_lo);
            const double c_hi = critical_value(table, psi, a_hi);
            if (c_lo <= t && t <= c_hi) {
                if (n_acc == 0) first_acc = i;
                last_acc = i;
                ++n_acc;
            }
        }
    }

    if (want_ci) {
        if (n_acc == 0) {
            out.ci.empty = true;
            out.ci.low = kNaN;
            out.ci.high = kNaN;
        } else {
            out.ci.low = grid.points[first_acc];
            out.ci.high = grid.points[last_acc];
            out.ci.hull = (n_acc != last_acc - first_acc + 1);
        }
    }

    // empty one-sided sets clamp to the nearest endpoint, flagged
    if (have_up) {
        out.mue.up = up;
    } else {
        out.mue.up = grid.points.front();
        out.mue.up_clamped = true;
    }
    if (have_low) {
        out.mue.low = low;
    } else {
        out.mue.low = grid.points.back();
        out.mue.low_clamped = true;
    }
    // A crossing of T and c(.5) strictly inside a grid cell leaves the two
    // one-sided endpoints on opposite bracket points (low one step above up);
    // the continuum estimator there is the single crossing, so collapse to
    // the upper-set endpoint.
    if (out.mue.low > out.mue.up) out.mue.low = out.mue.up;
    out.mue.point = out.mue.up;
    return out;
}

}  // namespace

CiResult confidence_interval(const LocalFit& fit, const QuantileTable& table,
                             const Rho0Grid& grid, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) raise(Errc::BadConfig, "alpha must be in (0,1)");
    return scan_grid(fit, table, grid, alpha, true).ci;
}

CiResult confidence_interval(const TimeSeries& series, double tau, int nh, double alpha,
                             const QuantileTable& table, const Rho0Grid& grid) {
    const Window w = make_window(series.size(), tau, nh);
    return confidence_interval(local_fit(series, w), table, grid, alpha);
}

MueResult mue(const LocalFit& fit, const QuantileTable& table, const Rho0Grid& grid) {
    return scan_grid(fit, table, grid, 0.5, false).mue;
}

MueResult mue(const TimeSeries& series, double tau, int nh, const QuantileTable& table,
              const Rho0Grid& grid) {
    const Window w = make_window(series.size(), tau, nh);
    return mue(local_fit(series, w), table, grid);
}

InferencePoint infer_point(const LocalFit& fit, double tau, double alpha,
                           const QuantileTable& table, const Rho0Grid& grid) {
    if (!(alpha > 0.0 && alpha < 1.0)) raise(Errc::BadConfig, "alpha must be in (0,1)");
    const GridScan scan = scan_grid(fit, table, grid, alpha, true);

    InferencePoint pt;
    pt.tau = tau;
    pt.nh_used = fit.window.nh_nominal;
    pt.window = fit.window;
    pt.rho_hat = fit.rho_hat;
    pt.alpha = alpha;
    pt.ci_low = scan.ci.low;
    pt.ci_high = scan.ci.high;
    pt.ci_is_interval_hull = scan.ci.hull;
    pt.ci_empty = scan.ci.empty;
    pt.mue_low = scan.mue.low;
    pt.mue_up = scan.mue.up;
    pt.mue_point = scan.mue.point;
    pt.valid = true;
    if (scan.ci.empty) pt.flags += "empty_ci;";
    if (scan.ci.hull) pt.flags += "ci_hull;";
    if (scan.mue.low_clamped || scan.mue.up_clamped) pt.flags += "mue_clamped;";
    return pt;
}

InferencePoint infer_point(const TimeSeries& series, double tau, int nh, double alpha,
                           const QuantileTable& table, const Rho0Grid& grid) {
    const Window w = make_window(series.size(), tau, nh);
    return infer_point(local_fit(series, w), tau, alpha, table, grid);
}

std::vector<InferencePoint> trajectory(const TimeSeries& series, const std::vector<double>& taus,
                                       int nh, double alpha, const QuantileTable& table,
                                       const Rho0Grid& grid) {
    std::vector<InferencePoint> points;
    points.reserve(taus.size());
    for (const double tau : taus) {
        try {
            points.push_back(infer_point(series, tau, nh, alpha, table, grid));
        } catch (const Error& e) {
            InferencePoint bad;
            bad.tau = tau;
            bad.nh_used = nh;
            bad.alpha = alpha;
            bad.valid = false;
            bad.rho_hat = kNaN;
            bad.ci_low = bad.ci_high = kNaN;
            bad.mue_low = bad.mue_up = bad.mue_point = kNaN;
            bad.flags = std::string("error:") + e.what() + ";";
            points.push_back(std::move(bad));
        }
    }
    return points;
}

}  // namespace tvpar
