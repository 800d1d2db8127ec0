#pragma once

#include <string>
#include <vector>

#include "tvpar/limit.hpp"
#include "tvpar/local.hpp"

namespace tvpar {

/// Candidate null values for the test inversion, increasing, ending at 1.
struct Rho0Grid {
    std::vector<double> points;

    /// {-1.000, -0.995, ..., 0.945} then {0.950, 0.951, ..., 1.000};
    /// 441 points with the fine step reserved for the near-unit-root range.
    static Rho0Grid default_grid();

    /// Same span with every step halved (refinement checks).
    Rho0Grid refined() const;
};

struct CiResult {
    double low = 0.0;
    double high = 0.0;
    bool hull = false;   // acceptance set was not contiguous; [low,high] is its hull
    bool empty = false;  // no grid point accepted
};

struct MueResult {
    double low = 0.0;
    double up = 0.0;
    double point = 0.0;
    bool low_clamped = false;  // one-sided .5 set was empty; clamped to a grid endpoint
    bool up_clamped = false;
};

/// Equal-tailed two-sided CI by grid inversion: rho0 is accepted when
/// c_psi(alpha/2) <= T_n(rho0) <= c_psi(1-alpha/2) with psi = psi_of(m, rho0)
/// for the realized window count m. alpha/2 and 1-alpha/2 must be table levels.
CiResult confidence_interval(const LocalFit& fit, const QuantileTable& table,
                             const Rho0Grid& grid, double alpha);
CiResult confidence_interval(const TimeSeries& series, double tau, int nh, double alpha,
                             const QuantileTable& table, const Rho0Grid& grid);

/// Median-unbiased interval estimator: up is the largest rho0 with
/// c_psi(.5) <= T_n(rho0), low the smallest with T_n(rho0) <= c_psi(.5);
/// the point estimate is the upper bound when the two differ. When the
/// unique crossing falls strictly between grid points the raw endpoints
/// invert by one step; low is then collapsed onto up, so low <= up always.
MueResult mue(const LocalFit& fit, const QuantileTable& table, const Rho0Grid& grid);
MueResult mue(const TimeSeries& series, double tau, int nh, const QuantileTable& table,
              const Rho0Grid& grid);

/// Full per-tau result bundle.
struct InferencePoint {
    double tau = 0.0;
    int nh_used = 0;
    Window window;
    double rho_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool ci_is_interval_hull = false;
    bool ci_empty = false;
    double mue_low = 0.0;
    double mue_up = 0.0;
    double mue_point = 0.0;
    double alpha = 0.0;
    bool valid = false;
    std::string flags;  // semicolon-separated markers (empty_ci, mue_clamped, ...)
};

/// CI + MUE in one grid pass over an existing fit.
InferencePoint infer_point(const LocalFit& fit, double tau, double alpha,
                           const QuantileTable& table, const Rho0Grid& grid);
InferencePoint infer_point(const TimeSeries& series, double tau, int nh, double alpha,
                           const QuantileTable& table, const Rho0Grid& grid);

/// One InferencePoint per tau. Failures (degenerate windows and the like)
/// are flagged in the affected entry; the sweep itself never throws for
/// per-point numerical conditions.
std::vector<InferencePoint> trajectory(const TimeSeries& series, const std::vector<double>& taus,
                                       int nh, double alpha, const QuantileTable& table,
                                       const Rho0Grid& grid);

}  // namespace tvpar
