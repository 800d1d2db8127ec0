#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tvpar/inference.hpp"
#include "tvpar/limit.hpp"
#include "tvpar/local.hpp"

namespace tvpar {

/// Local TVP-AR(p) fit in ADF form: Y_t regressed on
/// (1, Y_{t-1}, dY_{t-1}, ..., dY_{t-p+1}) over a window. rho_hat is the
/// coefficient on the lagged level, i.e. the sum of the AR coefficients.
///
/// The t-statistic and the nuisance regression behind psi^p are both affine
/// in rho0, so a single fit serves the whole inversion grid. With p = 1 the
/// fit delegates to the AR(1) estimator and reproduces it exactly.
struct AdfFit {
    int p = 1;
    double mu_hat = 0.0;
    double rho_hat = 0.0;
    std::vector<double> beta_hat;  // p-1 lag-difference coefficients
    double sigma2_hat = 0.0;
    double se_rho = 0.0;
    std::size_t m = 0;  // realized observation count
    Window window;      // window actually used; t1 is raised to p+1 when needed

    // beta(rho0) = beta_base - rho0 * beta_slope (per coefficient);
    // lambda(rho0) = lambda_base + rho0 * lambda_slope
    std::vector<double> beta_base;
    std::vector<double> beta_slope;
    double lambda_base = 1.0;
    double lambda_slope = 0.0;

    std::optional<LocalFit> ar1;  // exact delegate when p == 1
};

AdfFit adf_fit(const TimeSeries& series, const Window& window, int p);

/// t-statistic for the lagged-level coefficient against rho0.
double adf_t_stat(const AdfFit& fit, double rho0);
double adf_t_stat(const TimeSeries& series, const Window& window, int p, double rho0);

/// Drift mapping for the AR(p) case: -nh*ln(rho0)/lambda(rho0) with
/// lambda = 1 - sum of the beta(rho0) coefficients. A nonpositive lambda
/// invalidates the mapping; the AR(1) value is used instead with a flag.
struct PsiP {
    double psi = 0.0;
    double lambda = 1.0;
    bool lambda_fallback = false;
};

PsiP psi_p(const AdfFit& fit, double rho0, double nh_effective);
PsiP psi_p(const TimeSeries& series, const Window& window, int p, double rho0,
           double nh_effective);

/// CI + MUE for rho(tau) in the TVP-AR(p) model; identical to the AR(1)
/// inference path when p = 1.
InferencePoint ar_p_inference(const TimeSeries& series, double tau, int nh, int p, double alpha,
                              const QuantileTable& table, const Rho0Grid& grid);

/// In-window residuals of the ADF fit, for diagnostics.
std::vector<double> adf_residuals(const TimeSeries& series, const Window& window, int p);

struct LjungBoxResult {
    double statistic = 0.0;
    int lags = 6;
    double p_value = 1.0;
    int dof = 6;
};

/// Portmanteau test Q = m(m+2) sum_k r_k^2/(m-k) against chi-square(lags).
LjungBoxResult ljung_box(std::span<const double> residuals, int lags = 6);

}  // namespace tvpar
