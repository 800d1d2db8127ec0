#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "tvpar/csv.hpp"
#include "tvpar/errors.hpp"
#include "tvpar/pipeline.hpp"
#include "tvpar/rng.hpp"
#include "tvpar/transforms.hpp"

using namespace tvpar;

namespace {

void write_series_csv(const std::string& path, const std::vector<double>& values,
                      const std::string& column = "y") {
    std::ofstream out(path);
    out << "date," << column << "\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out << "d" << i + 1 << ',' << format_g17(values[i]) << '\n';
}

std::vector<double> ar1_values(double rho, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(n);
    double y = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        y = rho * y + rng.next_gaussian();
        v[t] = y;
    }
    return v;
}

struct TempFiles {
    std::vector<std::string> paths;
    ~TempFiles() {
        for (const auto& p : paths) std::remove(p.c_str());
    }
    const std::string& add(std::string p) {
        paths.push_back(std::move(p));
        return paths.back();
    }
};

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("inflation transform") {
    CHECK(transform_inflation({100.0, 101.0}) == std::vector<double>{1.0});
    const auto zeros = transform_inflation({50.0, 50.0, 50.0});
    CHECK(zeros == std::vector<double>({0.0, 0.0}));
    const auto mixed = transform_inflation({100.0, 100.0, 102.01});
    CHECK(mixed[0] == 0.0);
    CHECK(mixed[1] == doctest::Approx(2.01).epsilon(1e-12));
    CHECK_THROWS_AS(transform_inflation({100.0, -1.0}), Error);
    CHECK_THROWS_AS(transform_inflation({100.0, 0.0}), Error);
}

TEST_CASE("real exchange rate transform") {
    CHECK(transform_rex({1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}) == std::vector<double>({1.0, 1.0}));
    const auto r = transform_rex({2.0}, {110.0}, {100.0});
    CHECK(r[0] == doctest::Approx(2.2).epsilon(1e-14));
    CHECK_THROWS_AS(transform_rex({1.0, 2.0}, {1.0}, {1.0, 1.0}), Error);
    CHECK_THROWS_AS(transform_rex({1.0}, {-1.0}, {1.0}), Error);
}

TEST_CASE("panel reader rejects bad input") {
    TempFiles tmp;
    {
        const auto& p = tmp.add("test_pipe_nodate.csv");
        std::ofstream out(p);
        out << "time,y\n1,2.0\n";
        out.close();
        CHECK_THROWS_AS(read_panel_csv(p), Error);
    }
    {
        const auto& p = tmp.add("test_pipe_missing.csv");
        std::ofstream out(p);
        out << "date,y\nd1,1.0\nd2,\nd3,2.0\n";
        out.close();
        CHECK_THROWS_AS(read_panel_csv(p), Error);
    }
    {
        const auto& p = tmp.add("test_pipe_text.csv");
        std::ofstream out(p);
        out << "date,y\nd1,1.0\nd2,abc\n";
        out.close();
        CHECK_THROWS_AS(read_panel_csv(p), Error);
    }
}

TEST_CASE("format_g17 round trips doubles") {
    for (double x : {0.1, -2.86, 1.0 / 3.0, 6.02e23, 1e-300, 0.945}) {
        const double back = std::stod(format_g17(x));
        CHECK(back == x);
    }
}

TEST_CASE("analyze end to end with tau subset") {
    TempFiles tmp;
    const auto& input = tmp.add("test_pipe_fit.csv");
    write_series_csv(input, ar1_values(0.9, 400, 31));

    RunConfig cfg;
    cfg.input_path = input;
    cfg.taus = {0.2, 0.4, 0.6, 0.8, 1.0};
    cfg.alpha = 0.1;
    cfg.output_prefix = "test_pipe_fit_out";
    tmp.add("test_pipe_fit_out.csv");
    tmp.add("test_pipe_fit_out.json");

    const AnalyzeSummary summary = analyze(cfg);
    CHECK(summary.n == 400);
    CHECK(summary.rows_written == 5);
    CHECK(summary.nh_used >= 8);
    CHECK(summary.p_used == 1);
    CHECK(summary.ljung_box.size() == 3);

    // emitted CSV re-parses to the same numbers
    std::ifstream in(summary.csv_path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "date,tau,rho_hat,mue,ci_low,ci_high,nh_used,flags");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        std::stringstream ss(line);
        std::string date, tau_s, rho_s;
        std::getline(ss, date, ',');
        std::getline(ss, tau_s, ',');
        std::getline(ss, rho_s, ',');
        CHECK(std::isfinite(std::stod(rho_s)));
    }
    CHECK(rows == 5);
}

TEST_CASE("per-date sweep emits one row per observation") {
    TempFiles tmp;
    const auto& input = tmp.add("test_pipe_perdate.csv");
    // inflation input shaped like the monthly CPI series: 814 levels -> 813 rates
    std::vector<double> cpi(814);
    Rng rng(8);
    cpi[0] = 100.0;
    for (std::size_t i = 1; i < cpi.size(); ++i)
        cpi[i] = cpi[i - 1] * (1.0 + 0.002 + 0.002 * rng.next_gaussian());
    write_series_csv(input, cpi, "cpi");

    RunConfig cfg;
    cfg.input_path = input;
    cfg.column = "cpi";
    cfg.transform = TransformKind::Inflation;
    cfg.alpha = 0.1;
    cfg.output_prefix = "test_pipe_perdate_out";
    tmp.add("test_pipe_perdate_out.csv");
    tmp.add("test_pipe_perdate_out.json");

    const AnalyzeSummary summary = analyze(cfg);
    CHECK(summary.n == 813);
    CHECK(summary.rows_written == 813);
    CHECK(summary.bandwidth.grid.front() == 163);   // .2n rounded
    CHECK(summary.bandwidth.grid.back() == 1626);   // 2n
}

TEST_CASE("robustness and constant blocks extend the output") {
    TempFiles tmp;
    const auto& input = tmp.add("test_pipe_blocks.csv");
    write_series_csv(input, ar1_values(0.95, 350, 77));

    RunConfig cfg;
    cfg.input_path = input;
    cfg.taus = {0.25, 0.5, 0.75, 1.0};
    cfg.alpha = 0.1;
    cfg.robustness = true;
    cfg.constant_benchmark = true;
    cfg.output_prefix = "test_pipe_blocks_out";
    tmp.add("test_pipe_blocks_out.csv");
    tmp.add("test_pipe_blocks_out.json");

    const AnalyzeSummary summary = analyze(cfg);
    CHECK(summary.rows_written == 12);

    // constant-parameter rows reuse one full-sample window, so the MUE
    // trajectory is flat; robustness rows carry floor(1.5 * nh_us)
    std::ifstream in(summary.csv_path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> constant_mues;
    int robustness_rows = 0;
    const int nh_rob = static_cast<int>(std::floor(1.5 * summary.nh_used));
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::vector<std::string> f;
        std::string part;
        while (std::getline(ss, part, ',')) f.push_back(part);
        if (!line.empty() && line.back() == ',') f.emplace_back();  // empty flags field
        REQUIRE(f.size() == 8);
        if (f[7].find("robustness;") != std::string::npos) {
            ++robustness_rows;
            CHECK(std::stoi(f[6]) == nh_rob);
        }
        if (f[7].find("constant;") != std::string::npos) constant_mues.push_back(std::stod(f[3]));
    }
    CHECK(robustness_rows == 4);
    REQUIRE(constant_mues.size() == 4);
    for (std::size_t i = 1; i < constant_mues.size(); ++i)
        CHECK(constant_mues[i] == constant_mues[0]);
}

TEST_CASE("analyze is deterministic") {
    TempFiles tmp;
    const auto& input = tmp.add("test_pipe_det.csv");
    write_series_csv(input, ar1_values(0.8, 300, 15));

    RunConfig cfg;
    cfg.input_path = input;
    cfg.taus = {0.5};
    cfg.alpha = 0.1;
    cfg.output_prefix = "test_pipe_det_a";
    tmp.add("test_pipe_det_a.csv");
    tmp.add("test_pipe_det_a.json");
    analyze(cfg);
    cfg.output_prefix = "test_pipe_det_b";
    tmp.add("test_pipe_det_b.csv");
    tmp.add("test_pipe_det_b.json");
    analyze(cfg);

    std::ifstream a("test_pipe_det_a.csv"), b("test_pipe_det_b.csv");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}

}  // TEST_SUITE
