#include "tvpar/local.hpp"

#include <cmath>
#include <string>

#include "tvpar/errors.hpp"
#include "tvpar/math.hpp"

namespace tvpar {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) { validate(); }

TimeSeries::TimeSeries(std::vector<double> values, std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
    validate();
    if (!labels_.empty() && labels_.size() != values_.size())
        raise(Errc::BadSeries, "label count does not match value count");
}

void TimeSeries::validate() const {
    if (values_.size() < 3) raise(Errc::BadSeries, "series needs at least 3 observations");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            raise(Errc::BadSeries, "non-finite value at position " + std::to_string(i + 1));
    }
}

Window make_window(std::size_t n, double tau, int nh) {
    if (n < 3) raise(Errc::BadSeries, "make_window: series too short");
    if (!(tau > 0.0 && tau <= 1.0)) raise(Errc::TauOutOfRange, "tau must be in (0,1]");
    if (nh < static_cast<int>(kMinWindowCount)) raise(Errc::WindowTooSmall, "nh must be >= 8");

    Window w;
    w.nh_nominal = nh;
    if (static_cast<std::size_t>(nh) >= n) {
        // full-sample (constant-parameter) mode
        w.t1 = 2;
        w.t2 = n;
    } else {
        const auto center = static_cast<long long>(std::floor(static_cast<double>(n) * tau));
        const long long half = nh / 2;
        long long t1 = center - half;
        long long t2 = center + half;
        if (t1 < 2) t1 = 2;
        if (t2 > static_cast<long long>(n)) t2 = static_cast<long long>(n);
        w.t1 = static_cast<std::size_t>(t1);
        w.t2 = static_cast<std::size_t>(t2);
    }
    if (w.t2 < w.t1 || w.count() < kMinWindowCount)
        raise(Errc::WindowTooSmall, "window has fewer than 8 observations after clamping");
    return w;
}

LocalFit local_fit_span(std::span<const double> values, const Window& window) {
    const std::size_t n = values.size();
    if (window.t1 < 2 || window.t2 < window.t1 || window.t2 > n)
        raise(Errc::WindowTooSmall, "window out of range for series");

    const std::size_t m = window.count();
    // two-pass: means first, then centered cross-products
    KahanSum sum_y, sum_x;
    for (std::size_t t = window.t1; t <= window.t2; ++t) {
        sum_y.add(values[t - 1]);
        sum_x.add(values[t - 2]);
    }
    const double ybar = sum_y.value() / static_cast<double>(m);
    const double xbar = sum_x.value() / static_cast<double>(m);

    KahanSum sxx, sxy;
    for (std::size_t t = window.t1; t <= window.t2; ++t) {
        const double dx = values[t - 2] - xbar;
        const double dy = values[t - 1] - ybar;
        sxx.add(dx * dx);
        sxy.add(dx * dy);
    }
    if (!(sxx.value() > 0.0))
        raise(Errc::DegenerateRegressor, "lagged regressor is constant within the window");

    LocalFit fit;
    fit.window = window;
    fit.ybar = ybar;
    fit.ybar_lag = xbar;
    fit.rho_hat = sxy.value() / sxx.value();

    KahanSum ssr;
    for (std::size_t t = window.t1; t <= window.t2; ++t) {
        const double r = (values[t - 1] - ybar) - fit.rho_hat * (values[t - 2] - xbar);
        ssr.add(r * r);
    }
    fit.sigma2_hat = ssr.value() / static_cast<double>(m);
    fit.s2_hat = fit.sigma2_hat * static_cast<double>(m) / sxx.value();
    return fit;
}

LocalFit local_fit(const TimeSeries& series, const Window& window) {
    return local_fit_span(series.values(), window);
}

double t_stat(const LocalFit& fit, double rho0) {
    if (!(fit.s2_hat > 0.0))
        raise(Errc::ZeroStandardError, "t_stat: zero standard error (noiseless fit)");
    const double m = static_cast<double>(fit.count());
    return std::sqrt(m) * (fit.rho_hat - rho0) / std::sqrt(fit.s2_hat);
}

}  // namespace tvpar
