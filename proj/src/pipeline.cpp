#include "tvpar/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "tvpar/csv.hpp"
#include "tvpar/errors.hpp"
#include "tvpar/transforms.hpp"

#include "json.hpp"

namespace tvpar {

namespace {

InferencePoint point_for(const TimeSeries& series, double tau, int nh, int p, double alpha,
                         const QuantileTable& table, const Rho0Grid& grid) {
    return ar_p_inference(series, tau, nh, p, alpha, table, grid);
}

struct TrajectoryRow {
    std::string date;
    InferencePoint point;
    std::string block;  // "", "robustness", "constant"
};

void append_block(std::vector<TrajectoryRow>& rows, const TimeSeries& series,
                  const std::vector<double>& taus, const std::vector<std::string>& dates,
                  int nh, int p, double alpha, const QuantileTable& table, const Rho0Grid& grid,
                  const std::string& block) {
    for (std::size_t i = 0; i < taus.size(); ++i) {
        TrajectoryRow row;
        row.date = dates[i];
        row.block = block;
        try {
            row.point = point_for(series, taus[i], nh, p, alpha, table, grid);
        } catch (const Error& e) {
            row.point.tau = taus[i];
            row.point.nh_used = nh;
            row.point.alpha = alpha;
            row.point.valid = false;
            row.point.rho_hat = std::numeric_limits<double>::quiet_NaN();
            row.point.ci_low = row.point.ci_high = row.point.rho_hat;
            row.point.mue_low = row.point.mue_up = row.point.mue_point = row.point.rho_hat;
            row.point.flags = std::string("error:") + e.what() + ";";
        }
        rows.push_back(std::move(row));
    }
}

std::string transform_name(TransformKind kind) {
    switch (kind) {
        case TransformKind::None: return "none";
        case TransformKind::Inflation: return "inflation";
        case TransformKind::RealExchangeRate: return "real_exchange_rate";
    }
    return "none";
}

}  // namespace

TimeSeries load_series(const RunConfig& config) {
    const Panel panel = read_panel_csv(config.input_path);

    if (config.transform == TransformKind::RealExchangeRate) {
        if (config.rex_nex.empty() || config.rex_cpi.empty() || config.rex_base.empty())
            raise(Errc::BadConfig,
                  "real exchange rate transform needs --rex-nex, --rex-cpi and --rex-base");
        return TimeSeries(transform_rex(panel.column(config.rex_nex),
                                        panel.column(config.rex_cpi),
                                        panel.column(config.rex_base)),
                          panel.dates);
    }

    std::string column = config.column;
    if (column.empty()) {
        if (panel.names.size() != 1)
            raise(Errc::BadConfig, "input has several columns; pick one with --column");
        column = panel.names.front();
    }
    const auto& values = panel.column(column);

    if (config.transform == TransformKind::Inflation) {
        std::vector<std::string> dates(panel.dates.begin() + 1, panel.dates.end());
        return TimeSeries(transform_inflation(values), std::move(dates));
    }
    return TimeSeries(values, panel.dates);
}

QuantileTable load_table(const RunConfig& config) {
    switch (config.table_source) {
        case TableSource::Embedded: return QuantileTable::embedded();
        case TableSource::File: return read_table_csv(config.table_path);
        case TableSource::Simulate: {
            const auto& psi = QuantileTable::embedded().psi_grid();
            const auto& alphas = QuantileTable::embedded().alphas();
            return simulate_quantiles(psi, alphas, config.table_paths, config.table_path_length,
                                      config.seed);
        }
    }
    return QuantileTable::embedded();
}

AnalyzeSummary analyze(const RunConfig& config) {
    if (!(config.alpha > 0.0 && config.alpha < 1.0))
        raise(Errc::BadConfig, "alpha must be in (0,1)");
    if (config.p != 0 && config.p != 1 && config.p != 6 && config.p != 12)
        raise(Errc::BadConfig, "p must be 1, 6, 12, or auto");

    const TimeSeries series = load_series(config);
    const std::size_t n = series.size();
    const QuantileTable table = load_table(config);
    const Rho0Grid rho_grid = Rho0Grid::default_grid();

    AnalyzeSummary summary;
    summary.n = n;

    const BandwidthGrid grid =
        config.nh_grid.empty() ? BandwidthGrid::empirical(n) : BandwidthGrid(config.nh_grid);
    summary.bandwidth = select_bandwidth(series, grid, config.c1, config.c2, config.a);
    summary.nh_used = config.fixed_nh ? *config.fixed_nh : summary.bandwidth.h_us;

    // Ljung-Box sweep over candidate lag orders
    const Window full_window = make_window(n, 1.0, static_cast<int>(2 * n));
    for (const int p : {1, 6, 12}) {
        try {
            std::vector<double> residuals;
            if (config.lb_mode == LbResidualMode::ConstantFit) {
                residuals = adf_residuals(series, full_window, p);
            } else {
                for (const double tau : {0.2, 0.4, 0.6, 0.8, 1.0}) {
                    const Window w = make_window(n, tau, summary.nh_used);
                    const auto r = adf_residuals(series, w, p);
                    residuals.insert(residuals.end(), r.begin(), r.end());
                }
            }
            summary.ljung_box.emplace_back(p, ljung_box(residuals, 6));
        } catch (const Error&) {
            // diagnostics are advisory; a failed sweep entry is skipped
        }
    }

    if (config.p == 0) {
        summary.p_used = 12;
        for (const auto& [p, lb] : summary.ljung_box) {
            if (lb.p_value >= 0.05) {
                summary.p_used = p;
                break;
            }
        }
    } else {
        summary.p_used = config.p;
    }

    // trajectory dates: either the requested tau set or every observation
    std::vector<double> taus;
    std::vector<std::string> dates;
    if (config.taus.empty()) {
        taus.reserve(n);
        dates.reserve(n);
        for (std::size_t t = 1; t <= n; ++t) {
            taus.push_back(static_cast<double>(t) / static_cast<double>(n));
            dates.push_back(series.has_labels() ? series.labels()[t - 1] : std::to_string(t));
        }
    } else {
        for (const double tau : config.taus) {
            if (!(tau > 0.0 && tau <= 1.0)) raise(Errc::TauOutOfRange, "tau must be in (0,1]");
            auto t = static_cast<std::size_t>(std::floor(static_cast<double>(n) * tau));
            t = std::min(std::max<std::size_t>(t, 1), n);
            taus.push_back(tau);
            dates.push_back(series.has_labels() ? series.labels()[t - 1] : std::to_string(t));
        }
    }

    std::vector<TrajectoryRow> rows;
    rows.reserve(taus.size() * 3);
    append_block(rows, series, taus, dates, summary.nh_used, summary.p_used, config.alpha, table,
                 rho_grid, "");
    if (config.robustness) {
        const int nh_rob = static_cast<int>(std::floor(1.5 * summary.nh_used));
        append_block(rows, series, taus, dates, nh_rob, summary.p_used, config.alpha, table,
                     rho_grid, "robustness");
    }
    if (config.constant_benchmark) {
        append_block(rows, series, taus, dates, static_cast<int>(2 * n), summary.p_used,
                     config.alpha, table, rho_grid, "constant");
    }

    summary.csv_path = config.output_prefix + ".csv";
    summary.json_path = config.output_prefix + ".json";

    std::ofstream out(summary.csv_path);
    if (!out) raise(Errc::BadData, "cannot open for writing: " + summary.csv_path);
    out << "date,tau,rho_hat,mue,ci_low,ci_high,nh_used,flags\n";
    for (const auto& row : rows) {
        const auto& pt = row.point;
        std::string flags = pt.flags;
        if (!row.block.empty()) flags += row.block + ";";
        out << row.date << ',' << format_g17(pt.tau) << ',' << format_g17(pt.rho_hat) << ','
            << format_g17(pt.mue_point) << ',' << format_g17(pt.ci_low) << ','
            << format_g17(pt.ci_high) << ',' << pt.nh_used << ',' << flags << '\n';
    }
    out.close();
    summary.rows_written = rows.size();

    nlohmann::json j;
    j["config"] = {{"input", config.input_path},
                   {"transform", transform_name(config.transform)},
                   {"column", config.column},
                   {"alpha", config.alpha},
                   {"p", config.p == 0 ? "auto" : std::to_string(config.p)},
                   {"c1", config.c1},
                   {"c2", config.c2},
                   {"a", config.a},
                   {"seed", config.seed},
                   {"robustness", config.robustness},
                   {"constant_benchmark", config.constant_benchmark},
                   {"lb_residuals",
                    config.lb_mode == LbResidualMode::ConstantFit ? "constant" : "tvp"}};
    j["n"] = n;
    j["nh_used"] = summary.nh_used;
    j["p_used"] = summary.p_used;
    j["bandwidth"] = {{"h_hat", summary.bandwidth.h_hat},
                      {"h_us0", summary.bandwidth.h_us0},
                      {"h_us1", summary.bandwidth.h_us1},
                      {"h_us", summary.bandwidth.h_us}};
    nlohmann::json fe = nlohmann::json::array();
    for (std::size_t i = 0; i < summary.bandwidth.grid.size(); ++i)
        fe.push_back({{"nh", summary.bandwidth.grid[i]}, {"fe", summary.bandwidth.fe[i]}});
    j["bandwidth"]["fe"] = fe;
    nlohmann::json lb = nlohmann::json::array();
    for (const auto& [p, r] : summary.ljung_box)
        lb.push_back({{"p", p}, {"Q", r.statistic}, {"p_value", r.p_value}, {"lags", r.lags}});
    j["ljung_box"] = lb;
    const auto& prov = table.provenance();
    j["table"] = {{"kind", prov.kind == TableProvenance::Kind::Embedded     ? "embedded"
                           : prov.kind == TableProvenance::Kind::Simulated ? "simulated"
                                                                           : "file"},
                  {"num_paths", prov.num_paths},
                  {"path_length", prov.path_length},
                  {"seed", prov.seed}};
    j["rows_written"] = summary.rows_written;

    std::ofstream meta(summary.json_path);
    if (!meta) raise(Errc::BadData, "cannot open for writing: " + summary.json_path);
    meta << j.dump(2) << '\n';
    return summary;
}

}  // namespace tvpar
