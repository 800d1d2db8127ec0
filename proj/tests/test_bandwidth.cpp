#include <cmath>
#include <vector>

#include "doctest.h"

#include "tvpar/bandwidth.hpp"
#include "tvpar/errors.hpp"
#include "tvpar/math.hpp"
#include "tvpar/rng.hpp"

using namespace tvpar;

TEST_SUITE("bandwidth") {

TEST_CASE("default grids") {
    const BandwidthGrid sim = BandwidthGrid::simulation();
    CHECK(sim.nh_values.size() == 43);
    CHECK(sim.nh_values.front() == 140);
    CHECK(sim.nh_values[24] == 500);
    CHECK(sim.nh_values[25] == 650);
    CHECK(sim.nh_values.back() == 1500);

    const BandwidthGrid emp = BandwidthGrid::empirical(813);
    CHECK(emp.nh_values.front() == 163);  // round(.2 * 813)
    CHECK(emp.nh_values.back() == 1626);  // 2n
    CHECK_THROWS_AS(BandwidthGrid({10, 10}), Error);
    CHECK_THROWS_AS(BandwidthGrid({4}), Error);
}

TEST_CASE("noiseless recursion forecasts exactly for every nh") {
    std::vector<double> v(200);
    v[0] = 1.0;
    for (std::size_t t = 1; t < v.size(); ++t) v[t] = 0.5 * v[t - 1];
    const TimeSeries y(std::move(v));
    for (int nh : {10, 40, 150, 400}) {
        const FeValue fe = rolling_forecast_errors(y, nh);
        CHECK(fe.fe == 0.0);
        CHECK(fe.skipped == 0);
    }
    // all-zero FE means ties everywhere; the largest argmin among the
    // selectable entries (nh <= n/2 = 100) wins
    const BandwidthReport report = select_bandwidth(y, BandwidthGrid({10, 40, 150}));
    CHECK(report.h_hat == 40);
}

TEST_CASE("iid noise gives FE near the innovation variance") {
    Rng rng(31);
    std::vector<double> v(4000);
    for (double& x : v) x = rng.next_gaussian();
    const TimeSeries y(std::move(v));
    const FeValue fe = rolling_forecast_errors(y, 2000);
    CHECK(fe.fe == doctest::Approx(1.0).epsilon(0.08));
}

TEST_CASE("selection rules on synthetic FE vectors") {
    // strictly increasing FE: argmin and the quantile rule land on the grid
    // minimum; the n^(-a) shrinkage can push h_us below it (it does in the
    // published empirics, where the selected value sits under the grid floor)
    {
        const BandwidthReport r = select_from_fe({100, 200, 300, 400, 500},
                                                 {1.0, 2.0, 3.0, 4.0, 5.0}, {}, 1500, 0.2, 1.5,
                                                 0.1);
        CHECK(r.h_hat == 100);
        CHECK(r.h_us0 == 100);
        CHECK(r.h_us1 == doctest::Approx(1.5 * std::pow(1500.0, -0.1) * 100.0));
        CHECK(r.h_us == static_cast<int>(std::floor(r.h_us1)));  // 72
    }
    // two exact argmins: the larger is chosen
    {
        const BandwidthReport r = select_from_fe({100, 200, 300}, {1.0, 2.0, 1.0}, {}, 1500, 0.2,
                                                 1.5, 0.1);
        CHECK(r.h_hat == 300);
    }
    // h_us0 is the smallest nh within the lowest c1 fraction of the FE range
    {
        const BandwidthReport r = select_from_fe({100, 200, 300, 400, 500},
                                                 {5.0, 1.2, 1.0, 1.1, 4.0}, {}, 1500, 0.2, 1.5,
                                                 0.1);
        // cut = 1.0 + .2*(5.0-1.0) = 1.8, first reached at nh=200
        CHECK(r.h_hat == 300);
        CHECK(r.h_us0 == 200);
        CHECK(r.h_us == 200);  // below h_us1 = .72*300
    }
    // floor never goes below 8
    {
        const BandwidthReport r = select_from_fe({8, 16}, {1.0, 2.0}, {}, 1500, 0.2, 1.5, 0.1);
        CHECK(r.h_us == 8);
    }
    // entries past n/2 report FE but are never selected, even with lower FE
    {
        const BandwidthReport r = select_from_fe({100, 600, 1400}, {2.0, 1.5, 0.5}, {}, 1500,
                                                 0.2, 1.5, 0.1);
        CHECK(r.h_hat == 600);
        CHECK(r.fe.size() == 3);
    }
}

TEST_CASE("h_us never exceeds h_hat") {
    Rng rng(17);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> v(900);
        double y = 0.0;
        for (double& x : v) {
            y = 0.9 * y + rng.next_gaussian();
            x = y;
        }
        const TimeSeries series(std::move(v));
        const BandwidthReport r =
            select_bandwidth(series, BandwidthGrid({80, 120, 180, 270, 400, 600}));
        CHECK(r.h_us <= r.h_hat);
        CHECK(r.h_us >= 8);
    }
}

TEST_CASE("degenerate blocks are skipped and counted") {
    Rng rng(5);
    std::vector<double> v(400);
    for (std::size_t i = 0; i < 150; ++i) v[i] = 2.0;
    for (std::size_t i = 150; i < v.size(); ++i) v[i] = 0.5 * v[i - 1] + rng.next_gaussian();
    const TimeSeries y(std::move(v));
    const FeValue fe = rolling_forecast_errors(y, 100);
    CHECK(fe.skipped > 0);
    CHECK(std::isfinite(fe.fe));
}

TEST_CASE("decomposition identity FE = L - 2C + E") {
    const DgpSpec dgp = DgpSpec::linear(0.6, 0.95, 600, true);
    const PathRealization path = simulate_path(dgp, 404);
    for (int nh : {60, 150, 320}) {
        const FeDecomposition d = fe_decomposition(path.series, nh, dgp);
        const double reconstructed = d.loss - 2.0 * d.cross + d.noise;
        CHECK(std::abs(d.fe - reconstructed) < 1e-10);
        CHECK(d.fe == doctest::Approx(rolling_forecast_errors(path.series, nh).fe));
        CHECK(d.loss >= 0.0);
        CHECK(d.noise > 0.0);
    }
}

TEST_CASE("empirical loss vanishes when the fits equal the truth") {
    std::vector<double> v(120);
    v[0] = 1.0;
    for (std::size_t t = 1; t < v.size(); ++t) v[t] = 0.5 * v[t - 1];
    const TimeSeries y(std::move(v));
    const DgpSpec truth = DgpSpec::flat(0.5, 120);
    CHECK(empirical_loss(y, 30, truth) == 0.0);
}

TEST_CASE("selected bandwidth is near-optimal for the true loss") {
    // FE minimization tracks the infeasible empirical-loss minimizer over
    // the candidate set. Frozen from a 200-replication run of this exact
    // experiment: 161/200 ratios within 1.5, median ratio 1.12.
    const DgpSpec dgp = DgpSpec::flat(0.90, 1500);
    const BandwidthGrid grid = BandwidthGrid::simulation();
    std::vector<int> candidates;
    for (const int nh : grid.nh_values)
        if (static_cast<std::size_t>(nh) * 2 <= 1500) candidates.push_back(nh);

    const int reps = 200;
    int within = 0;
    std::vector<double> ratios;
    for (int r = 0; r < reps; ++r) {
        const PathRealization path = simulate_path(dgp, 9000 + r);
        const BandwidthReport report = select_bandwidth(path.series, grid);
        const double at_selection = empirical_loss(path.series, report.h_hat, dgp);
        double best = at_selection;
        for (const int nh : candidates)
            best = std::min(best, empirical_loss(path.series, nh, dgp));
        REQUIRE(best > 0.0);
        ratios.push_back(at_selection / best);
        if (ratios.back() <= 1.5) ++within;
    }
    CHECK(within >= reps * 72 / 100);  // 3 sigma below the measured 80%
    CHECK(median(ratios) <= 1.3);
}

TEST_CASE("full-window grid entries are usable (empirical grid reaches 2n)") {
    Rng rng(23);
    std::vector<double> v(200);
    double y = 0.0;
    for (double& x : v) {
        y = 0.95 * y + rng.next_gaussian();
        x = y;
    }
    const TimeSeries series(std::move(v));
    const FeValue near_n = rolling_forecast_errors(series, 199);
    const FeValue big = rolling_forecast_errors(series, 400);
    CHECK(std::isfinite(big.fe));
    // beyond n-1 every fit is the same leave-one-out full-sample block
    CHECK(big.fe == doctest::Approx(near_n.fe).epsilon(1e-12));

    const BandwidthReport r = select_bandwidth(series, BandwidthGrid::empirical(series.size()));
    CHECK(r.full_window_entries);
    CHECK(r.h_us >= 8);
}

}  // TEST_SUITE
