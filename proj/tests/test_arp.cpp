#include <cmath>
#include <vector>

#include "doctest.h"

#include "tvpar/arp.hpp"
#include "tvpar/errors.hpp"
#include "tvpar/rng.hpp"

using namespace tvpar;

namespace {

// AR(2) in ADF form: Y_t = rho*Y_{t-1} + beta1*dY_{t-1} + sigma*U_t
TimeSeries ar2_series(double rho, double beta1, std::size_t n, std::uint64_t seed,
                      double sigma = 1.0) {
    Rng rng(seed);
    std::vector<double> v(n);
    double prev = rng.next_gaussian(), prev2 = rng.next_gaussian();
    for (std::size_t t = 0; t < n; ++t) {
        const double value = rho * prev + beta1 * (prev - prev2) + sigma * rng.next_gaussian();
        prev2 = prev;
        prev = value;
        v[t] = value;
    }
    return TimeSeries(std::move(v));
}

}  // namespace

TEST_SUITE("arp") {

TEST_CASE("p=1 reduces to the AR(1) estimator bit for bit") {
    const TimeSeries y = ar2_series(0.8, 0.0, 800, 9);
    const Window w = make_window(y.size(), 0.5, 200);
    const LocalFit ar1 = local_fit(y, w);
    const AdfFit fit = adf_fit(y, w, 1);
    CHECK(fit.rho_hat == ar1.rho_hat);
    CHECK(fit.sigma2_hat == ar1.sigma2_hat);
    for (double rho0 : {-0.5, 0.0, 0.8, 0.95, 1.0})
        CHECK(adf_t_stat(fit, rho0) == t_stat(ar1, rho0));

    const QuantileTable& table = QuantileTable::embedded();
    const Rho0Grid grid = Rho0Grid::default_grid();
    const InferencePoint a = ar_p_inference(y, 0.5, 200, 1, 0.05, table, grid);
    const InferencePoint b = infer_point(y, 0.5, 200, 0.05, table, grid);
    CHECK(a.ci_low == b.ci_low);
    CHECK(a.ci_high == b.ci_high);
    CHECK(a.mue_low == b.mue_low);
    CHECK(a.mue_up == b.mue_up);
    CHECK(a.mue_point == b.mue_point);
    CHECK(a.rho_hat == b.rho_hat);
}

TEST_CASE("noiseless AR(2) recursion is recovered exactly") {
    std::vector<double> v(200);
    v[0] = 1.0;
    v[1] = 0.75;
    for (std::size_t t = 2; t < v.size(); ++t)
        v[t] = 0.75 * v[t - 1] + 0.5 * (v[t - 1] - v[t - 2]);
    const TimeSeries y(std::move(v));
    const AdfFit fit = adf_fit(y, make_window(y.size(), 0.5, 100), 2);
    CHECK(fit.rho_hat == doctest::Approx(0.75).epsilon(1e-8));
    REQUIRE(fit.beta_hat.size() == 1);
    CHECK(fit.beta_hat[0] == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(fit.sigma2_hat < 1e-18);
    CHECK(adf_t_stat(fit, fit.rho_hat) == 0.0);  // numerator vanishes at the point estimate
}

TEST_CASE("constant series gives a singular ADF design") {
    const TimeSeries y(std::vector<double>(100, 1.0));
    try {
        adf_fit(y, make_window(100, 0.5, 50), 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SingularDesign);
    }
}

TEST_CASE("window too small for the lag order") {
    const TimeSeries y = ar2_series(0.5, 0.2, 100, 4);
    const Window w{2, 12, 10};
    CHECK_THROWS_AS(adf_fit(y, w, 6), Error);
}

TEST_CASE("psi_p reductions and edge cases") {
    const TimeSeries y = ar2_series(0.7, 0.3, 900, 21);
    const Window w = make_window(y.size(), 0.5, 300);

    // p = 1: lambda is exactly one, psi matches the AR(1) mapping
    const AdfFit ar1 = adf_fit(y, w, 1);
    const PsiP p1 = psi_p(ar1, 0.9, 300.0);
    CHECK(p1.lambda == 1.0);
    CHECK(p1.psi == psi_of(300.0, 0.9));
    CHECK(!p1.lambda_fallback);

    const AdfFit ar2 = adf_fit(y, w, 2);
    CHECK(psi_p(ar2, 1.0, 300.0).psi == 0.0);
    CHECK(std::isinf(psi_p(ar2, -0.2, 300.0).psi));
    CHECK_THROWS_AS(psi_p(ar2, 1.2, 300.0), Error);
}

TEST_CASE("lambda estimate is consistent for AR(2)") {
    // beta1 = .3 so lambda = .7; large window
    const TimeSeries y = ar2_series(0.6, 0.3, 6000, 33);
    const Window w = make_window(y.size(), 0.5, 4000);
    const AdfFit fit = adf_fit(y, w, 2);
    const PsiP at_true = psi_p(fit, 0.6, static_cast<double>(fit.m));
    CHECK(at_true.lambda == doctest::Approx(0.7).epsilon(0.08));
    const double expected = -static_cast<double>(fit.m) * std::log(0.6) / at_true.lambda;
    CHECK(at_true.psi == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("lambda(rho0) matches a direct nuisance regression") {
    // independent check of the affine-in-rho0 shortcut
    const TimeSeries y = ar2_series(0.7, 0.25, 500, 55);
    const Window w = make_window(y.size(), 0.4, 160);
    const AdfFit fit = adf_fit(y, w, 2);

    for (double rho0 : {0.2, 0.7, 0.95}) {
        // direct OLS of z = Y_t - rho0*Y_{t-1} on (1, dY_{t-1}) over the fit window
        long double s1 = 0, sd = 0, sdd = 0, sz = 0, sdz = 0;
        for (std::size_t t = fit.window.t1; t <= fit.window.t2; ++t) {
            const long double d = y.at(t - 1) - y.at(t - 2);
            const long double z = y.at(t) - rho0 * y.at(t - 1);
            s1 += 1;
            sd += d;
            sdd += d * d;
            sz += z;
            sdz += d * z;
        }
        const long double beta = (s1 * sdz - sd * sz) / (s1 * sdd - sd * sd);
        const double lambda_direct = static_cast<double>(1.0L - beta);
        const PsiP p = psi_p(fit, rho0, 100.0);
        CHECK(p.lambda == doctest::Approx(lambda_direct).epsilon(1e-9));
    }
}

TEST_CASE("adf t-statistic is strictly decreasing in rho0") {
    const TimeSeries y = ar2_series(0.7, 0.2, 600, 8);
    const AdfFit fit = adf_fit(y, make_window(y.size(), 0.5, 200), 3);
    double prev = adf_t_stat(fit, -1.0);
    for (double rho0 = -0.8; rho0 <= 1.0; rho0 += 0.2) {
        const double cur = adf_t_stat(fit, rho0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("ar(6) 90% inference covers a flat sum of coefficients" * doctest::timeout(120)) {
    const QuantileTable& table = QuantileTable::embedded();
    const Rho0Grid grid = Rho0Grid::default_grid();
    int covered = 0, total = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const TimeSeries y = ar2_series(0.9, 0.25, 1500, seed * 131);
        const InferencePoint pt = ar_p_inference(y, 0.6, 400, 6, 0.10, table, grid);
        if (!pt.valid || pt.ci_empty) continue;
        ++total;
        if (pt.ci_low <= 0.9 && 0.9 <= pt.ci_high) ++covered;
    }
    REQUIRE(total >= 95);
    const double cp = static_cast<double>(covered) / total;
    CHECK(cp >= 0.85);
    CHECK(cp <= 0.95);
}

TEST_CASE("ljung-box basics") {
    CHECK_THROWS_AS(ljung_box(std::vector<double>(5, 1.0), 6), Error);
    try {
        ljung_box(std::vector<double>(100, 2.5), 6);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ZeroVarianceResiduals);
    }

    Rng rng(3);
    std::vector<double> iid(1000);
    for (double& x : iid) x = rng.next_gaussian();
    const LjungBoxResult r = ljung_box(iid, 6);
    CHECK(r.dof == 6);
    CHECK(r.statistic >= 0.0);
    CHECK(r.p_value > 0.001);

    // scale invariance
    std::vector<double> scaled = iid;
    for (double& x : scaled) x *= 100.0;
    const LjungBoxResult rs = ljung_box(scaled, 6);
    CHECK(rs.statistic == doctest::Approx(r.statistic).epsilon(1e-12));

    // strong autocorrelation is detected
    std::vector<double> ar(1000);
    double y = 0.0;
    for (double& x : ar) {
        y = 0.8 * y + rng.next_gaussian();
        x = y;
    }
    CHECK(ljung_box(ar, 6).p_value < 0.001);
}

}  // TEST_SUITE
