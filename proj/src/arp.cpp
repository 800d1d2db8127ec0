#include "tvpar/arp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tvpar/errors.hpp"
#include "tvpar/math.hpp"

namespace tvpar {

namespace {

// In-place Gauss-Jordan inverse with full pivoting for the small (<= 13x13)
// cross-product matrices. The matrix is symmetrically equilibrated first so
// the pivot-ratio singularity test (1e12) sees correlations, not column
// scales. Returns false when the matrix is singular or too ill-conditioned.
bool invert_full_pivot(std::vector<double>& a, int k) {
    // D A D with D = diag(1/sqrt(a_ii)); a zero diagonal is a zero column
    std::vector<double> scale(k);
    for (int i = 0; i < k; ++i) {
        const double d = a[static_cast<std::size_t>(i) * k + i];
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        scale[i] = 1.0 / std::sqrt(d);
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a[static_cast<std::size_t>(i) * k + j] *= scale[i] * scale[j];

    std::vector<int> row_perm(k), col_perm(k);
    std::vector<bool> used(k, false);
    double max_pivot = 0.0, min_pivot = 0.0;

    for (int step = 0; step < k; ++step) {
        int pr = -1, pc = -1;
        double best = 0.0;
        for (int i = 0; i < k; ++i) {
            if (used[i]) continue;
            for (int j = 0; j < k; ++j) {
                if (used[j]) continue;
                const double v = std::abs(a[i * k + j]);
                if (v > best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        }
        if (pr < 0 || best == 0.0) return false;
        if (step == 0) {
            max_pivot = best;
            min_pivot = best;
        } else {
            max_pivot = std::max(max_pivot, best);
            min_pivot = std::min(min_pivot, best);
        }
        if (max_pivot / min_pivot > 1e12) return false;

        used[pc] = true;
        row_perm[step] = pr;
        col_perm[step] = pc;
        if (pr != pc)
            for (int j = 0; j < k; ++j) std::swap(a[pr * k + j], a[pc * k + j]);

        const double pivinv = 1.0 / a[pc * k + pc];
        a[pc * k + pc] = 1.0;
        for (int j = 0; j < k; ++j) a[pc * k + j] *= pivinv;
        for (int i = 0; i < k; ++i) {
            if (i == pc) continue;
            const double f = a[i * k + pc];
            a[i * k + pc] = 0.0;
            for (int j = 0; j < k; ++j) a[i * k + j] -= f * a[pc * k + j];
        }
    }
    for (int step = k - 1; step >= 0; --step) {
        if (row_perm[step] != col_perm[step])
            for (int i = 0; i < k; ++i)
                std::swap(a[i * k + row_perm[step]], a[i * k + col_perm[step]]);
    }
    // undo the equilibration: (D A D)^-1 = D^-1 A^-1 D^-1, so A^-1 = D (.) D
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a[static_cast<std::size_t>(i) * k + j] *= scale[i] * scale[j];
    return true;
}

std::vector<double> mat_vec(const std::vector<double>& a, const std::vector<double>& x, int k) {
    std::vector<double> out(k, 0.0);
    for (int i = 0; i < k; ++i) {
        double s = 0.0;
        for (int j = 0; j < k; ++j) s += a[i * k + j] * x[j];
        out[i] = s;
    }
    return out;
}

// Design row for observation t (1-indexed): (1, Y_{t-1}, dY_{t-1}, ..., dY_{t-p+1}).
void design_row(const std::vector<double>& v, std::size_t t, int p, std::vector<double>& row) {
    row[0] = 1.0;
    row[1] = v[t - 2];
    for (int j = 1; j <= p - 1; ++j) row[1 + j] = v[t - 1 - j] - v[t - 2 - j];
}

}  // namespace

AdfFit adf_fit(const TimeSeries& series, const Window& window, int p) {
    if (p < 1) raise(Errc::BadConfig, "adf_fit: p must be >= 1");

    if (p == 1) {
        AdfFit fit;
        fit.p = 1;
        fit.window = window;
        fit.ar1 = local_fit(series, window);
        fit.rho_hat = fit.ar1->rho_hat;
        fit.sigma2_hat = fit.ar1->sigma2_hat;
        fit.m = fit.ar1->count();
        fit.se_rho = std::sqrt(fit.ar1->s2_hat / static_cast<double>(fit.m));
        fit.lambda_base = 1.0;
        fit.lambda_slope = 0.0;
        return fit;
    }

    const auto& v = series.values();
    const std::size_t n = v.size();
    if (window.t1 < 2 || window.t2 < window.t1 || window.t2 > n)
        raise(Errc::WindowTooSmall, "adf_fit: window out of range");

    // deepest regressor is Y_{t-p}, so estimation starts at max(t1, p+1)
    const std::size_t t_start = std::max<std::size_t>(window.t1, static_cast<std::size_t>(p) + 1);
    if (window.t2 < t_start + static_cast<std::size_t>(p) + 6)
        raise(Errc::WindowTooSmall, "adf_fit: window count must be at least p+7");
    const std::size_t m = window.t2 - t_start + 1;

    const int k = p + 1;
    std::vector<double> xtx(static_cast<std::size_t>(k) * k, 0.0);
    std::vector<double> xty(k, 0.0);
    std::vector<double> row(k);
    for (std::size_t t = t_start; t <= window.t2; ++t) {
        design_row(v, t, p, row);
        const double y = v[t - 1];
        for (int i = 0; i < k; ++i) {
            xty[i] += row[i] * y;
            for (int j = i; j < k; ++j) xtx[i * k + j] += row[i] * row[j];
        }
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < i; ++j) xtx[i * k + j] = xtx[j * k + i];

    std::vector<double> xtx_inv = xtx;
    if (!invert_full_pivot(xtx_inv, k))
        raise(Errc::SingularDesign, "adf_fit: ill-conditioned ADF design matrix");
    const std::vector<double> coef = mat_vec(xtx_inv, xty, k);

    AdfFit fit;
    fit.p = p;
    fit.window = window;
    fit.window.t1 = t_start;
    fit.m = m;
    fit.mu_hat = coef[0];
    fit.rho_hat = coef[1];
    fit.beta_hat.assign(coef.begin() + 2, coef.end());

    KahanSum ssr;
    for (std::size_t t = t_start; t <= window.t2; ++t) {
        design_row(v, t, p, row);
        double pred = 0.0;
        for (int i = 0; i < k; ++i) pred += row[i] * coef[i];
        const double r = v[t - 1] - pred;
        ssr.add(r * r);
    }
    fit.sigma2_hat = ssr.value() / static_cast<double>(m);
    const double var_rho = fit.sigma2_hat * xtx_inv[1 * k + 1];
    fit.se_rho = var_rho > 0.0 ? std::sqrt(var_rho) : 0.0;

    // nuisance regression of Y_t - rho0*Y_{t-1} on (1, dY_{t-1}, ..., dY_{t-p+1});
    // the dependent variable is affine in rho0, so solve once for Y and once
    // for the lagged level
    const int kw = p;  // intercept + p-1 lag differences
    std::vector<double> wtw(static_cast<std::size_t>(kw) * kw, 0.0);
    std::vector<double> wty(kw, 0.0);
    std::vector<double> wtl(kw, 0.0);
    std::vector<double> wrow(kw);
    for (std::size_t t = t_start; t <= window.t2; ++t) {
        design_row(v, t, p, row);
        wrow[0] = 1.0;
        for (int j = 1; j < kw; ++j) wrow[j] = row[j + 1];
        const double y = v[t - 1];
        const double lag = v[t - 2];
        for (int i = 0; i < kw; ++i) {
            wty[i] += wrow[i] * y;
            wtl[i] += wrow[i] * lag;
            for (int j = i; j < kw; ++j) wtw[i * kw + j] += wrow[i] * wrow[j];
        }
    }
    for (int i = 0; i < kw; ++i)
        for (int j = 0; j < i; ++j) wtw[i * kw + j] = wtw[j * kw + i];

    std::vector<double> wtw_inv = wtw;
    if (!invert_full_pivot(wtw_inv, kw))
        raise(Errc::SingularDesign, "adf_fit: ill-conditioned nuisance design matrix");
    const std::vector<double> coef_y = mat_vec(wtw_inv, wty, kw);
    const std::vector<double> coef_lag = mat_vec(wtw_inv, wtl, kw);

    fit.beta_base.assign(coef_y.begin() + 1, coef_y.end());
    fit.beta_slope.assign(coef_lag.begin() + 1, coef_lag.end());
    double sum_base = 0.0, sum_slope = 0.0;
    for (int j = 0; j < p - 1; ++j) {
        sum_base += fit.beta_base[j];
        sum_slope += fit.beta_slope[j];
    }
    fit.lambda_base = 1.0 - sum_base;
    fit.lambda_slope = sum_slope;
    return fit;
}

double adf_t_stat(const AdfFit& fit, double rho0) {
    if (fit.ar1) return t_stat(*fit.ar1, rho0);
    if (!(fit.se_rho > 0.0))
        raise(Errc::ZeroStandardError, "adf_t_stat: zero standard error (noiseless fit)");
    return (fit.rho_hat - rho0) / fit.se_rho;
}

double adf_t_stat(const TimeSeries& series, const Window& window, int p, double rho0) {
    return adf_t_stat(adf_fit(series, window, p), rho0);
}

PsiP psi_p(const AdfFit& fit, double rho0, double nh_effective) {
    if (rho0 > 1.0) raise(Errc::RhoAboveOne, "psi_p: rho0 must be <= 1");
    PsiP out;
    if (rho0 <= 0.0) {
        out.psi = std::numeric_limits<double>::infinity();
        out.lambda = fit.lambda_base + rho0 * fit.lambda_slope;
        return out;
    }
    out.lambda = fit.lambda_base + rho0 * fit.lambda_slope;
    if (!(out.lambda > 0.0)) {
        out.lambda_fallback = true;
        out.psi = psi_of(nh_effective, rho0);
        return out;
    }
    const double psi = -nh_effective * std::log(rho0) / out.lambda;
    out.psi = psi < 0.0 ? 0.0 : psi;
    return out;
}

PsiP psi_p(const TimeSeries& series, const Window& window, int p, double rho0,
           double nh_effective) {
    return psi_p(adf_fit(series, window, p), rho0, nh_effective);
}

InferencePoint ar_p_inference(const TimeSeries& series, double tau, int nh, int p, double alpha,
                              const QuantileTable& table, const Rho0Grid& grid) {
    if (p == 1) return infer_point(series, tau, nh, alpha, table, grid);
    if (!(alpha > 0.0 && alpha < 1.0)) raise(Errc::BadConfig, "alpha must be in (0,1)");
    if (grid.points.empty()) raise(Errc::InvalidGrid, "empty rho0 grid");

    const Window window = make_window(series.size(), tau, nh);
    const AdfFit fit = adf_fit(series, window, p);
    const double m = static_cast<double>(fit.m);

    const double a_lo = alpha / 2.0;
    const double a_hi = 1.0 - alpha / 2.0;
    table.alpha_index(a_lo);
    table.alpha_index(a_hi);
    table.alpha_index(0.5);

    std::size_t first_acc = 0, last_acc = 0, n_acc = 0;
    bool have_up = false, have_low = false;
    double up = 0.0, low = 0.0;
    long fallbacks = 0;

    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        const double rho0 = grid.points[i];
        const double t = adf_t_stat(fit, rho0);
        const PsiP psi = psi_p(fit, rho0, m);
        if (psi.lambda_fallback) ++fallbacks;

        const double c_med = critical_value(table, psi.psi, 0.5);
        if (c_med <= t) {
            up = rho0;
            have_up = true;
        }
        if (!have_low && t <= c_med) {
            low = rho0;
            have_low = true;
        }
        const double c_lo = critical_value(table, psi.psi, a_lo);
        const double c_hi = critical_value(table, psi.psi, a_hi);
        if (c_lo <= t && t <= c_hi) {
            if (n_acc == 0) first_acc = i;
            last_acc = i;
            ++n_acc;
        }
    }

    InferencePoint pt;
    pt.tau = tau;
    pt.nh_used = nh;
    pt.window = fit.window;
    pt.rho_hat = fit.rho_hat;
    pt.alpha = alpha;
    pt.valid = true;
    if (n_acc == 0) {
        pt.ci_empty = true;
        pt.ci_low = pt.ci_high = std::numeric_limits<double>::quiet_NaN();
        pt.flags += "empty_ci;";
    } else {
        pt.ci_low = grid.points[first_acc];
        pt.ci_high = grid.points[last_acc];
        pt.ci_is_interval_hull = (n_acc != last_acc - first_acc + 1);
        if (pt.ci_is_interval_hull) pt.flags += "ci_hull;";
    }
    if (have_up) {
        pt.mue_up = up;
    } else {
        pt.mue_up = grid.points.front();
        pt.flags += "mue_clamped;";
    }
    if (have_low) {
        pt.mue_low = low;
    } else {
        pt.mue_low = grid.points.back();
        pt.flags += "mue_clamped;";
    }
    // in-cell crossing: collapse to the upper-set endpoint as in the AR(1) scan
    if (pt.mue_low > pt.mue_up) pt.mue_low = pt.mue_up;
    pt.mue_point = pt.mue_up;
    if (fallbacks > 0) pt.flags += "lambda_fallback;";
    return pt;
}

std::vector<double> adf_residuals(const TimeSeries& series, const Window& window, int p) {
    const auto& v = series.values();
    if (p == 1) {
        const LocalFit fit = local_fit(series, window);
        std::vector<double> res;
        res.reserve(fit.count());
        for (std::size_t t = window.t1; t <= window.t2; ++t)
            res.push_back((v[t - 1] - fit.ybar) - fit.rho_hat * (v[t - 2] - fit.ybar_lag));
        return res;
    }
    const AdfFit fit = adf_fit(series, window, p);
    const int k = p + 1;
    std::vector<double> coef(k);
    coef[0] = fit.mu_hat;
    coef[1] = fit.rho_hat;
    for (int j = 0; j < p - 1; ++j) coef[2 + j] = fit.beta_hat[static_cast<std::size_t>(j)];

    std::vector<double> res;
    res.reserve(fit.m);
    std::vector<double> row(k);
    for (std::size_t t = fit.window.t1; t <= fit.window.t2; ++t) {
        design_row(v, t, p, row);
        double pred = 0.0;
        for (int i = 0; i < k; ++i) pred += row[i] * coef[i];
        res.push_back(v[t - 1] - pred);
    }
    return res;
}

LjungBoxResult ljung_box(std::span<const double> residuals, int lags) {
    if (lags < 1) raise(Errc::BadConfig, "ljung_box: lags must be >= 1");
    const auto m = static_cast<long>(residuals.size());
    if (m <= lags + 1) raise(Errc::TooFewResiduals, "ljung_box: need more residuals than lags+1");

    KahanSum mean_sum;
    for (const double e : residuals) mean_sum.add(e);
    const double mean = mean_sum.value() / static_cast<double>(m);

    KahanSum denom_sum;
    for (const double e : residuals) denom_sum.add((e - mean) * (e - mean));
    const double denom = denom_sum.value();
    if (!(denom > 0.0)) raise(Errc::ZeroVarianceResiduals, "ljung_box: residuals have no variance");

    const double dm = static_cast<double>(m);
    double q = 0.0;
    for (int k = 1; k <= lags; ++k) {
        KahanSum num;
        for (long t = k; t < m; ++t)
            num.add((residuals[static_cast<std::size_t>(t)] - mean) *
                    (residuals[static_cast<std::size_t>(t - k)] - mean));
        const double r = num.value() / denom;
        q += r * r / (dm - static_cast<double>(k));
    }
    q *= dm * (dm + 2.0);

    LjungBoxResult out;
    out.statistic = q;
    out.lags = lags;
    out.dof = lags;
    out.p_value = chi_square_upper_tail(q, lags);
    return out;
}

}  // namespace tvpar
