#include "tvpar/dgp.hpp"

#include <cmath>
#include <cstdio>

#include "tvpar/errors.hpp"
#include "tvpar/math.hpp"
#include "tvpar/rng.hpp"

namespace tvpar {

namespace {

std::string fmt2(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

}  // namespace

DgpSpec DgpSpec::flat(double level, std::size_t n, bool tv) {
    DgpSpec s{RhoShape::Flat, level, 0.0, 0.0, tv, n};
    validate_dgp(s);
    return s;
}

DgpSpec DgpSpec::linear(double from, double to, std::size_t n, bool tv) {
    DgpSpec s{RhoShape::Linear, from, to, 0.0, tv, n};
    validate_dgp(s);
    return s;
}

DgpSpec DgpSpec::flat_linear(double level, double to, std::size_t n, bool tv) {
    DgpSpec s{RhoShape::FlatLinear, level, to, 0.0, tv, n};
    validate_dgp(s);
    return s;
}

DgpSpec DgpSpec::kinked(double from, double mid, double to, std::size_t n, bool tv) {
    DgpSpec s{RhoShape::Kinked, from, mid, to, tv, n};
    validate_dgp(s);
    return s;
}

DgpSpec DgpSpec::sinusoid(double at02, double at06, double at10, std::size_t n, bool tv) {
    DgpSpec s{RhoShape::Sinusoid, at02, at06, at10, tv, n};
    validate_dgp(s);
    return s;
}

std::string DgpSpec::name() const {
    std::string base;
    switch (shape) {
        case RhoShape::Flat: base = "flat-" + fmt2(a); break;
        case RhoShape::Linear: base = "linear-" + fmt2(a) + "-" + fmt2(b); break;
        case RhoShape::FlatLinear: base = "flat-lin-" + fmt2(a) + "-" + fmt2(b); break;
        case RhoShape::Kinked: base = "kinked-" + fmt2(a) + "-" + fmt2(b) + "-" + fmt2(c); break;
        case RhoShape::Sinusoid: base = "sin-" + fmt2(a) + "-" + fmt2(b) + "-" + fmt2(c); break;
    }
    if (tv_mu_sigma) base += "-tv";
    return base;
}

double rho_function(const DgpSpec& spec, double u) {
    switch (spec.shape) {
        case RhoShape::Flat: return spec.a;
        case RhoShape::Linear: return spec.a + (spec.b - spec.a) * u;
        case RhoShape::FlatLinear:
            if (u <= 0.5) return spec.a;
            return spec.a + (spec.b - spec.a) * (2.0 * u - 1.0);
        case RhoShape::Kinked:
            if (u <= 0.5) return spec.a + (spec.b - spec.a) * (2.0 * u);
            return spec.b + (spec.c - spec.b) * (2.0 * u - 1.0);
        case RhoShape::Sinusoid: {
            const double mid = 0.5 * (spec.a + spec.b);
            const double amp = 0.5 * (spec.a - spec.b);
            return mid + amp * std::sin(2.5 * 3.14159265358979323846 * u);
        }
    }
    return 0.0;
}

double mu_star_function(const DgpSpec& spec, double u) {
    if (!spec.tv_mu_sigma) return 0.0;
    return -0.1 + 0.2 * u;
}

double sigma_function(const DgpSpec& spec, double u) {
    if (!spec.tv_mu_sigma) return 1.0;
    return 0.95 + 0.1 * u;
}

void validate_dgp(const DgpSpec& spec) {
    if (spec.n < 3) raise(Errc::BadConfig, "dgp: sample size must be at least 3");
    if (spec.shape == RhoShape::Sinusoid && std::abs(spec.c - spec.a) > 1e-9)
        raise(Errc::BadConfig,
              "dgp: sinusoid with 2.5*pi frequency requires equal values at u=.2 and u=1");
    for (int k = 0; k <= 1024; ++k) {
        const double u = static_cast<double>(k) / 1024.0;
        const double r = rho_function(spec, u);
        if (!(r >= -1.0 && r <= 1.0))
            raise(Errc::BadConfig, "dgp: rho(u) leaves [-1,1] (" + spec.name() + ")");
        if (!(sigma_function(spec, u) > 0.0))
            raise(Errc::BadConfig, "dgp: sigma(u) must be positive");
    }
}

PathRealization simulate_path(const DgpSpec& spec, std::uint64_t seed) {
    validate_dgp(spec);
    const std::size_t n = spec.n;
    const double dn = static_cast<double>(n);

    KahanSum rho_sum;
    for (std::size_t t = 1; t <= n; ++t) rho_sum.add(rho_function(spec, static_cast<double>(t) / dn));
    const double rho_bar = rho_sum.value() / dn;

    Rng rng(seed);
    PathRealization out{TimeSeries({0.0, 0.0, 0.0}), 0.0, false};
    double y0 = 0.0;
    if (rho_bar * rho_bar < 1.0) {
        y0 = rng.next_gaussian() / std::sqrt(1.0 - rho_bar * rho_bar);
    } else {
        out.explosive_init = true;
    }

    std::vector<double> values(n);
    double prev = y0;
    for (std::size_t t = 1; t <= n; ++t) {
        const double u = static_cast<double>(t) / dn;
        prev = mu_star_function(spec, u) + rho_function(spec, u) * prev +
               sigma_function(spec, u) * rng.next_gaussian();
        values[t - 1] = prev;
    }
    out.series = TimeSeries(std::move(values));
    out.y0 = y0;
    return out;
}

}  // namespace tvpar
