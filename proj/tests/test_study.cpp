#include <cstdio>
#include <fstream>

#include "doctest.h"

#include "tvpar/errors.hpp"
#include "tvpar/study.hpp"

using namespace tvpar;

TEST_SUITE("study") {

TEST_CASE("small study produces sane, deterministic metrics") {
    StudyConfig cfg;
    cfg.dgps = {DgpSpec::flat(0.9, 300)};
    cfg.taus = {0.5, 1.0};
    cfg.reps = 24;
    cfg.alpha = 0.1;
    cfg.seed = 5;
    cfg.nh_grid = {40, 60, 90, 140};

    const StudyResult a = run_study(cfg, QuantileTable::embedded());
    REQUIRE(a.cells.size() == 2);
    for (const auto& c : a.cells) {
        CHECK(c.coverage >= 0.0);
        CHECK(c.coverage <= 1.0);
        CHECK(c.avg_length >= 0.0);
        CHECK(c.mad_lower >= 0.0);
        CHECK(c.mad_upper >= 0.0);
        CHECK(c.reps == 24);
        CHECK(c.rho_true == 0.9);
        CHECK(c.median_nh_us >= 8.0);
    }

    const StudyResult b = run_study(cfg, QuantileTable::embedded());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].coverage == b.cells[i].coverage);
        CHECK(a.cells[i].avg_length == b.cells[i].avg_length);
        CHECK(a.cells[i].abs_median_bias == b.cells[i].abs_median_bias);
        CHECK(a.cells[i].median_nh_us == b.cells[i].median_nh_us);
    }
}

TEST_CASE("oracle mode bypasses selection") {
    StudyConfig cfg;
    cfg.dgps = {DgpSpec::flat(0.9, 300)};
    cfg.taus = {0.5};
    cfg.reps = 8;
    cfg.alpha = 0.1;
    cfg.seed = 2;
    cfg.fixed_nh = 300;
    cfg.collect_raw = true;

    const StudyResult r = run_study(cfg, QuantileTable::embedded());
    REQUIRE(!r.raw.empty());
    for (const auto& rec : r.raw) CHECK(rec.nh_used == 300);
}

TEST_CASE("oracle-mode coverage sits at the nominal level") {
    StudyConfig cfg;
    cfg.dgps = {DgpSpec::flat(0.9, 1500)};
    cfg.taus = {0.6};
    cfg.reps = 200;
    cfg.alpha = 0.05;
    cfg.seed = 77;
    cfg.fixed_nh = 1500;

    const StudyResult r = run_study(cfg, QuantileTable::embedded());
    // three binomial standard errors at M=200: ~.046
    CHECK(r.cells[0].coverage > 0.95 - 0.047);
    CHECK(r.cells[0].coverage < 0.95 + 0.047);
}

TEST_CASE("study csv output") {
    StudyConfig cfg;
    cfg.dgps = {DgpSpec::flat(0.8, 300)};
    cfg.taus = {0.5};
    cfg.reps = 6;
    cfg.alpha = 0.1;
    cfg.seed = 9;
    cfg.nh_grid = {40, 80};

    const StudyResult r = run_study(cfg, QuantileTable::embedded());
    const std::string path = "test_study_out.csv";
    write_study_csv(r, path, false);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header ==
          "dgp,tau,coverage,avg_length,abs_median_bias,mad_lower,mad_upper,median_nh_us,reps");
    std::string row;
    CHECK(std::getline(in, row).good());
    CHECK(row.rfind("flat-0.80,", 0) == 0);
    in.close();
    std::remove(path.c_str());
}

TEST_CASE("config validation") {
    StudyConfig cfg;
    cfg.dgps = {DgpSpec::flat(0.8, 300)};
    cfg.reps = 0;
    CHECK_THROWS_AS(run_study(cfg, QuantileTable::embedded()), Error);
    cfg.reps = 2;
    cfg.taus = {1.5};
    CHECK_THROWS_AS(run_study(cfg, QuantileTable::embedded()), Error);
}

}  // TEST_SUITE
