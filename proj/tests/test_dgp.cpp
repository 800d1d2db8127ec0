#include <cmath>

#include "doctest.h"

#include "tvpar/dgp.hpp"
#include "tvpar/errors.hpp"
#include "tvpar/math.hpp"

using namespace tvpar;

TEST_SUITE("dgp") {

TEST_CASE("rho shapes match their closed forms") {
    const DgpSpec fl = DgpSpec::flat_linear(0.90, 0.99, 1500);
    CHECK(rho_function(fl, 0.75) == doctest::Approx(0.18 * 0.75 + 0.81).epsilon(1e-14));
    CHECK(rho_function(fl, 0.3) == 0.90);
    CHECK(rho_function(fl, 1.0) == doctest::Approx(0.99));

    const DgpSpec flat = DgpSpec::flat(0.99, 100);
    for (double u : {0.0, 0.37, 1.0}) CHECK(rho_function(flat, u) == 0.99);

    const DgpSpec kinked = DgpSpec::kinked(1.00, 0.80, 1.00, 1500);
    CHECK(rho_function(kinked, 0.5) == doctest::Approx(0.80));
    CHECK(rho_function(kinked, 0.0) == doctest::Approx(1.00));
    CHECK(rho_function(kinked, 1.0) == doctest::Approx(1.00));

    const DgpSpec lin = DgpSpec::linear(0.60, 0.90, 1500);
    CHECK(rho_function(lin, 0.5) == doctest::Approx(0.75));
}

TEST_CASE("sinusoid hits its anchor values") {
    const DgpSpec sin_dgp = DgpSpec::sinusoid(1.00, 0.90, 1.00, 1500);
    CHECK(rho_function(sin_dgp, 0.2) == doctest::Approx(1.00).epsilon(1e-12));
    CHECK(rho_function(sin_dgp, 0.6) == doctest::Approx(0.90).epsilon(1e-12));
    CHECK(rho_function(sin_dgp, 1.0) == doctest::Approx(1.00).epsilon(1e-12));
    // extrema, not just anchors: stays inside [0.90, 1.00]
    for (int k = 0; k <= 100; ++k) {
        const double r = rho_function(sin_dgp, k / 100.0);
        CHECK(r <= 1.0 + 1e-12);
        CHECK(r >= 0.90 - 1e-12);
    }
    CHECK_THROWS_AS(DgpSpec::sinusoid(1.00, 0.90, 0.95, 1500), Error);
}

TEST_CASE("time-varying mu and sigma ramps") {
    const DgpSpec tv = DgpSpec::flat(0.9, 100, true);
    CHECK(mu_star_function(tv, 0.0) == doctest::Approx(-0.1));
    CHECK(mu_star_function(tv, 1.0) == doctest::Approx(0.1));
    CHECK(sigma_function(tv, 0.0) == doctest::Approx(0.95));
    CHECK(sigma_function(tv, 1.0) == doctest::Approx(1.05));
    const DgpSpec cc = DgpSpec::flat(0.9, 100, false);
    CHECK(mu_star_function(cc, 0.3) == 0.0);
    CHECK(sigma_function(cc, 0.7) == 1.0);
}

TEST_CASE("rho outside [-1,1] is rejected") {
    CHECK_THROWS_AS(DgpSpec::flat(1.01, 100), Error);
    CHECK_THROWS_AS(DgpSpec::linear(-1.2, 0.5, 100), Error);
}

TEST_CASE("paths are deterministic in the seed") {
    const DgpSpec dgp = DgpSpec::flat(0.9, 500);
    const PathRealization a = simulate_path(dgp, 11);
    const PathRealization b = simulate_path(dgp, 11);
    const PathRealization c = simulate_path(dgp, 12);
    REQUIRE(a.series.size() == 500);
    for (std::size_t t = 1; t <= 500; ++t) CHECK(a.series.at(t) == b.series.at(t));
    CHECK(a.series.at(1) != c.series.at(1));
}

TEST_CASE("flat(.90) sample autocorrelation is near .90") {
    const DgpSpec dgp = DgpSpec::flat(0.90, 1500);
    const PathRealization path = simulate_path(dgp, 2024);
    const auto& v = path.series.values();
    KahanSum sx;
    for (const double x : v) sx.add(x);
    const double mean = sx.value() / static_cast<double>(v.size());
    KahanSum num, den;
    for (std::size_t t = 1; t < v.size(); ++t)
        num.add((v[t] - mean) * (v[t - 1] - mean));
    for (const double x : v) den.add((x - mean) * (x - mean));
    CHECK(num.value() / den.value() == doctest::Approx(0.90).epsilon(0.034));
}

TEST_CASE("unit-mean-rho initialization falls back to zero") {
    const DgpSpec dgp = DgpSpec::flat(1.0, 300);
    const PathRealization path = simulate_path(dgp, 3);
    CHECK(path.explosive_init);
    CHECK(path.y0 == 0.0);
}

TEST_CASE("stationary start has the stationary scale") {
    const DgpSpec dgp = DgpSpec::flat(0.9, 10);
    double sumsq = 0.0;
    const int reps = 4000;
    for (int r = 0; r < reps; ++r) {
        const double y0 = simulate_path(dgp, 50000 + r).y0;
        sumsq += y0 * y0;
    }
    const double target = 1.0 / (1.0 - 0.81);
    CHECK(sumsq / reps == doctest::Approx(target).epsilon(0.12));
}

TEST_CASE("names identify the catalog entries") {
    CHECK(DgpSpec::flat(0.99, 100).name() == "flat-0.99");
    CHECK(DgpSpec::sinusoid(1.0, 0.6, 1.0, 100).name() == "sin-1.00-0.60-1.00");
    CHECK(DgpSpec::flat_linear(0.9, 0.99, 100, true).name() == "flat-lin-0.90-0.99-tv");
}

}  // TEST_SUITE
