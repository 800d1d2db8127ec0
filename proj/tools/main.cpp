#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tvpar/arp.hpp"
#include "tvpar/bandwidth.hpp"
#include "tvpar/csv.hpp"
#include "tvpar/errors.hpp"
#include "tvpar/inference.hpp"
#include "tvpar/limit.hpp"
#include "tvpar/pipeline.hpp"
#include "tvpar/study.hpp"

namespace {

using namespace tvpar;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::BadConfig:
        case Errc::AlphaNotInTable:
        case Errc::InvalidGrid:
        case Errc::RhoAboveOne:
        case Errc::TauOutOfRange:
            return kExitConfig;
        case Errc::BadData:
        case Errc::BadSeries:
        case Errc::NonpositiveCpi:
        case Errc::LengthMismatch:
        case Errc::NonpositiveInput:
            return kExitData;
        default:
            return kExitNumerical;
    }
}

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

std::vector<int> parse_ints(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

TransformKind parse_transform(const std::string& name) {
    if (name == "none") return TransformKind::None;
    if (name == "inflation") return TransformKind::Inflation;
    if (name == "rex" || name == "real_exchange_rate") return TransformKind::RealExchangeRate;
    raise(Errc::BadConfig, "unknown transform: " + name);
}

int parse_p(const std::string& p) {
    if (p == "auto") return 0;
    const int v = std::stoi(p);
    if (v != 1 && v != 6 && v != 12) raise(Errc::BadConfig, "--p must be 1, 6, 12 or auto");
    return v;
}

std::vector<int> parse_nh_grid(const std::string& spec, std::size_t n) {
    if (spec.empty() || spec == "empirical") return BandwidthGrid::empirical(n).nh_values;
    if (spec == "simulation") return BandwidthGrid::simulation().nh_values;
    return parse_ints(spec);
}

// ---------------------------------------------------------------------------
// shared flag bundles
// ---------------------------------------------------------------------------

struct InputFlags {
    std::string input;
    std::string column;
    std::string transform = "none";
    std::string rex_nex, rex_cpi, rex_base;

    void attach(CLI::App* cmd, bool input_required = true) {
        auto* opt = cmd->add_option("--input", input, "input CSV with a `date` column");
        if (input_required) opt->required();
        cmd->add_option("--column", column, "value column (default: the only one)");
        cmd->add_option("--transform", transform, "none | inflation | rex");
        cmd->add_option("--rex-nex", rex_nex, "nominal exchange rate column (rex)");
        cmd->add_option("--rex-cpi", rex_cpi, "domestic CPI column (rex)");
        cmd->add_option("--rex-base", rex_base, "base-country CPI column (rex)");
    }

    void fill(RunConfig& cfg) const {
        cfg.input_path = input;
        cfg.column = column;
        cfg.transform = parse_transform(transform);
        cfg.rex_nex = rex_nex;
        cfg.rex_cpi = rex_cpi;
        cfg.rex_base = rex_base;
    }
};

struct TableFlags {
    std::string table = "embedded";

    void attach(CLI::App* cmd) {
        cmd->add_option("--table", table, "embedded | path to a gen-table CSV");
    }

    void fill(RunConfig& cfg) const {
        if (table == "embedded") {
            cfg.table_source = TableSource::Embedded;
        } else {
            cfg.table_source = TableSource::File;
            cfg.table_path = table;
        }
    }
};

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

// Base values from --config (JSON mirroring the flag names); explicitly
// passed flags win over file values.
void apply_fit_config_file(RunConfig& cfg, const std::string& path, const CLI::App* cmd) {
    std::ifstream in(path);
    if (!in) raise(Errc::BadData, "cannot open config: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
        raise(Errc::BadConfig, std::string("config JSON parse error: ") + e.what());
    }
    const auto overridden = [&](const std::string& flag) {
        return cmd->count("--" + flag) > 0;
    };
    if (j.contains("input") && !overridden("input"))
        cfg.input_path = j.at("input").get<std::string>();
    if (j.contains("column") && !overridden("column"))
        cfg.column = j.at("column").get<std::string>();
    if (j.contains("transform") && !overridden("transform"))
        cfg.transform = parse_transform(j.at("transform").get<std::string>());
    if (j.contains("taus") && !overridden("taus"))
        cfg.taus = j.at("taus").get<std::vector<double>>();
    if (j.contains("p") && !overridden("p"))
        cfg.p = j.at("p").is_string() ? parse_p(j.at("p").get<std::string>())
                                      : j.at("p").get<int>();
    if (j.contains("alpha") && !overridden("alpha")) cfg.alpha = j.at("alpha").get<double>();
    if (j.contains("c1") && !overridden("c1")) cfg.c1 = j.at("c1").get<double>();
    if (j.contains("c2") && !overridden("c2")) cfg.c2 = j.at("c2").get<double>();
    if (j.contains("a") && !overridden("a")) cfg.a = j.at("a").get<double>();
    if (j.contains("seed") && !overridden("seed"))
        cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("fixed_nh") && !j.at("fixed_nh").is_null() && !overridden("fixed-nh"))
        cfg.fixed_nh = j.at("fixed_nh").get<int>();
    if (j.contains("robustness") && !overridden("robustness"))
        cfg.robustness = j.at("robustness").get<bool>();
    if (j.contains("constant_benchmark") && !overridden("constant-benchmark"))
        cfg.constant_benchmark = j.at("constant_benchmark").get<bool>();
    if (j.contains("lb_residuals") && !overridden("lb-residuals"))
        cfg.lb_mode = j.at("lb_residuals").get<std::string>() == "tvp"
                          ? LbResidualMode::TvpFit
                          : LbResidualMode::ConstantFit;
    if (j.contains("output_prefix") && !overridden("output-prefix"))
        cfg.output_prefix = j.at("output_prefix").get<std::string>();
    if (j.contains("table") && !overridden("table")) {
        const std::string t = j.at("table").get<std::string>();
        if (t == "embedded") {
            cfg.table_source = TableSource::Embedded;
        } else {
            cfg.table_source = TableSource::File;
            cfg.table_path = t;
        }
    }
    if (j.contains("nh_grid") && !overridden("nh-grid"))
        cfg.nh_grid = j.at("nh_grid").get<std::vector<int>>();
}

int run_fit(const CLI::App* cmd, const InputFlags& in, const TableFlags& tbl,
            const std::string& config_path, const std::string& taus, const std::string& p,
            double alpha, const std::string& nh_grid, std::optional<int> fixed_nh, double c1,
            double c2, double a, std::uint64_t seed, bool robustness, bool constant_benchmark,
            const std::string& lb_residuals, const std::string& output) {
    RunConfig cfg;
    in.fill(cfg);
    tbl.fill(cfg);
    cfg.taus = parse_doubles(taus);
    cfg.p = parse_p(p);
    cfg.alpha = alpha;
    cfg.c1 = c1;
    cfg.c2 = c2;
    cfg.a = a;
    cfg.seed = seed;
    cfg.fixed_nh = fixed_nh;
    cfg.robustness = robustness;
    cfg.constant_benchmark = constant_benchmark;
    cfg.output_prefix = output;
    if (lb_residuals == "tvp")
        cfg.lb_mode = LbResidualMode::TvpFit;
    else if (lb_residuals != "constant")
        raise(Errc::BadConfig, "--lb-residuals must be constant or tvp");
    if (!config_path.empty()) apply_fit_config_file(cfg, config_path, cmd);
    if (cfg.input_path.empty()) raise(Errc::BadConfig, "fit: no input given (flag or config)");
    if (!nh_grid.empty() && nh_grid != "empirical") {
        const TimeSeries probe = load_series(cfg);
        cfg.nh_grid = parse_nh_grid(nh_grid, probe.size());
    }

    const AnalyzeSummary summary = analyze(cfg);
    std::printf("n=%zu  nh_hat=%d  nh_us=%d  p=%d  rows=%zu\n", summary.n,
                summary.bandwidth.h_hat, summary.nh_used, summary.p_used, summary.rows_written);
    for (const auto& [pp, lb] : summary.ljung_box)
        std::printf("ljung-box p=%-2d  Q=%.3f  p-value=%.4f\n", pp, lb.statistic, lb.p_value);
    std::printf("wrote %s and %s\n", summary.csv_path.c_str(), summary.json_path.c_str());
    return 0;
}

int run_ci(const InputFlags& in, const TableFlags& tbl, const std::string& taus_s,
           std::optional<int> nh, const std::string& p, double alpha, std::uint64_t seed) {
    RunConfig cfg;
    in.fill(cfg);
    tbl.fill(cfg);
    cfg.seed = seed;
    const TimeSeries series = load_series(cfg);
    const QuantileTable table = load_table(cfg);
    const Rho0Grid grid = Rho0Grid::default_grid();

    int nh_used = 0;
    if (nh) {
        nh_used = *nh;
    } else {
        nh_used = select_bandwidth(series, BandwidthGrid::empirical(series.size())).h_us;
        std::printf("selected nh_us=%d\n", nh_used);
    }

    const std::vector<double> taus = parse_doubles(taus_s);
    if (taus.empty()) raise(Errc::BadConfig, "ci: give at least one --taus value");
    std::printf("%8s %10s %10s %10s %10s %8s  %s\n", "tau", "rho_hat", "mue", "ci_low", "ci_high",
                "nh", "flags");
    for (const double tau : taus) {
        const InferencePoint pt =
            ar_p_inference(series, tau, nh_used, parse_p(p) == 0 ? 1 : parse_p(p), alpha, table,
                           grid);
        std::printf("%8.4f %10.4f %10.4f %10.4f %10.4f %8d  %s\n", pt.tau, pt.rho_hat,
                    pt.mue_point, pt.ci_low, pt.ci_high, pt.nh_used, pt.flags.c_str());
    }
    return 0;
}

int run_bandwidth(const InputFlags& in, const std::string& nh_grid, double c1, double c2,
                  double a, const std::string& output) {
    RunConfig cfg;
    in.fill(cfg);
    const TimeSeries series = load_series(cfg);
    const BandwidthGrid grid = BandwidthGrid(parse_nh_grid(nh_grid, series.size()));
    const BandwidthReport report = select_bandwidth(series, grid, c1, c2, a);

    std::printf("n=%zu  nh_hat=%d  nh_us0=%d  nh_us1=%.2f  nh_us=%d\n", series.size(),
                report.h_hat, report.h_us0, report.h_us1, report.h_us);
    if (!output.empty()) {
        std::ofstream out(output);
        if (!out) raise(Errc::BadData, "cannot open for writing: " + output);
        out << "nh,fe,skipped\n";
        for (std::size_t i = 0; i < report.grid.size(); ++i)
            out << report.grid[i] << ',' << format_g17(report.fe[i]) << ',' << report.skipped[i]
                << '\n';
        std::printf("wrote %s\n", output.c_str());
    }
    return 0;
}

DgpSpec dgp_from_json(const nlohmann::json& j, std::size_t default_n) {
    const std::string shape = j.at("rho").get<std::string>();
    const auto params = j.at("params").get<std::vector<double>>();
    const bool tv = j.value("tv_mu_sigma", false);
    const std::size_t n = j.value("n", default_n);
    auto need = [&](std::size_t count) {
        if (params.size() != count)
            raise(Errc::BadConfig, "dgp `" + shape + "` needs " + std::to_string(count) +
                                       " parameters");
    };
    if (shape == "flat") {
        need(1);
        return DgpSpec::flat(params[0], n, tv);
    }
    if (shape == "linear") {
        need(2);
        return DgpSpec::linear(params[0], params[1], n, tv);
    }
    if (shape == "flat-lin" || shape == "flat_lin") {
        need(2);
        return DgpSpec::flat_linear(params[0], params[1], n, tv);
    }
    if (shape == "kinked") {
        need(3);
        return DgpSpec::kinked(params[0], params[1], params[2], n, tv);
    }
    if (shape == "sin") {
        need(3);
        return DgpSpec::sinusoid(params[0], params[1], params[2], n, tv);
    }
    raise(Errc::BadConfig, "unknown rho shape: " + shape);
}

int run_study_cmd(const std::string& config_path, std::optional<int> reps_override,
                  std::optional<std::uint64_t> seed_override, const std::string& output_override,
                  bool raw, const TableFlags& tbl) {
    std::ifstream in(config_path);
    if (!in) raise(Errc::BadData, "cannot open config: " + config_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
        raise(Errc::BadConfig, std::string("config JSON parse error: ") + e.what());
    }

    StudyConfig cfg;
    const std::size_t default_n = j.value("n", 1500);
    cfg.reps = reps_override ? *reps_override : j.value("reps", 500);
    cfg.alpha = j.value("alpha", 0.05);
    cfg.seed = seed_override ? *seed_override : j.value("seed", 1);
    cfg.c1 = j.value("c1", 0.2);
    cfg.c2 = j.value("c2", 1.5);
    cfg.a = j.value("a", 0.1);
    if (j.contains("taus")) cfg.taus = j.at("taus").get<std::vector<double>>();
    if (j.contains("nh_grid")) {
        if (j.at("nh_grid").is_string()) {
            const std::string g = j.at("nh_grid").get<std::string>();
            if (g == "simulation")
                cfg.nh_grid.clear();
            else if (g == "empirical")
                cfg.nh_grid = BandwidthGrid::empirical(default_n).nh_values;
            else
                raise(Errc::BadConfig, "nh_grid must be `simulation`, `empirical`, or a list");
        } else {
            cfg.nh_grid = j.at("nh_grid").get<std::vector<int>>();
        }
    }
    if (j.contains("fixed_nh") && !j.at("fixed_nh").is_null()) {
        if (j.at("fixed_nh").is_string() && j.at("fixed_nh").get<std::string>() == "n")
            cfg.fixed_nh = static_cast<int>(default_n);
        else
            cfg.fixed_nh = j.at("fixed_nh").get<int>();
    }
    if (!j.contains("dgps") || !j.at("dgps").is_array() || j.at("dgps").empty())
        raise(Errc::BadConfig, "config needs a nonempty `dgps` array");
    for (const auto& dj : j.at("dgps")) cfg.dgps.push_back(dgp_from_json(dj, default_n));
    cfg.collect_raw = raw || j.value("raw", false);

    RunConfig table_cfg;
    tbl.fill(table_cfg);
    const QuantileTable table = load_table(table_cfg);

    const StudyResult result = run_study(cfg, table);
    const std::string output =
        !output_override.empty() ? output_override : j.value("output", std::string("study.csv"));
    write_study_csv(result, output, cfg.collect_raw);

    std::printf("%-28s %6s %9s %9s %9s %9s\n", "dgp", "tau", "coverage", "avg_len", "med_bias",
                "med_nh");
    for (const auto& c : result.cells)
        std::printf("%-28s %6.2f %9.4f %9.4f %9.4f %9.0f\n", c.dgp.c_str(), c.tau, c.coverage,
                    c.avg_length, c.abs_median_bias, c.median_nh_us);
    std::printf("wrote %s\n", output.c_str());
    return 0;
}

int run_gen_table(const std::string& psi_grid_s, const std::string& alphas_s, long paths,
                  long path_length, std::uint64_t seed, const std::string& output) {
    std::vector<double> psi_grid;
    if (psi_grid_s == "embedded")
        psi_grid = QuantileTable::embedded().psi_grid();
    else
        psi_grid = parse_doubles(psi_grid_s);
    std::vector<double> alphas =
        alphas_s == "embedded" ? QuantileTable::embedded().alphas() : parse_doubles(alphas_s);

    const QuantileTable table = simulate_quantiles(psi_grid, alphas, paths, path_length, seed);
    write_table_csv(table, output);
    std::printf("wrote %s (+.json sidecar): %zu psi rows x %zu levels, B=%ld, n=%ld, seed=%llu\n",
                output.c_str(), table.psi_grid().size(), table.alphas().size(), paths,
                path_length, static_cast<unsigned long long>(seed));
    return 0;
}

int run_ljung_box(const InputFlags& in, const std::string& p_list, int lags,
                  const std::string& residual_mode, std::optional<int> nh) {
    RunConfig cfg;
    in.fill(cfg);
    const TimeSeries series = load_series(cfg);
    const std::size_t n = series.size();

    std::vector<int> ps = p_list.empty() ? std::vector<int>{1, 6, 12} : parse_ints(p_list);
    std::printf("%4s %12s %12s\n", "p", "Q", "p-value");
    for (const int p : ps) {
        std::vector<double> residuals;
        if (residual_mode == "tvp") {
            const int nh_used = nh ? *nh
                                   : select_bandwidth(series, BandwidthGrid::empirical(n)).h_us;
            for (const double tau : {0.2, 0.4, 0.6, 0.8, 1.0}) {
                const auto r = adf_residuals(series, make_window(n, tau, nh_used), p);
                residuals.insert(residuals.end(), r.begin(), r.end());
            }
        } else if (residual_mode == "constant") {
            residuals = adf_residuals(series, make_window(n, 1.0, static_cast<int>(2 * n)), p);
        } else {
            raise(Errc::BadConfig, "--residuals must be constant or tvp");
        }
        const LjungBoxResult lb = ljung_box(residuals, lags);
        std::printf("%4d %12.4f %12.6f\n", p, lb.statistic, lb.p_value);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Estimation and uniform inference for the time-varying AR coefficient "
                 "in TVP-AR models"};
    app.require_subcommand(1);

    // fit ------------------------------------------------------------------
    auto* fit = app.add_subcommand("fit", "bandwidth selection + CI/MUE trajectory for a series");
    InputFlags fit_in;
    TableFlags fit_tbl;
    fit_in.attach(fit, /*input_required=*/false);
    fit_tbl.attach(fit);
    std::string fit_config, fit_taus, fit_p = "1", fit_nh_grid, fit_lb = "constant",
                fit_output = "tvpar_run";
    double fit_alpha = 0.1, fit_c1 = 0.2, fit_c2 = 1.5, fit_a = 0.1;
    std::uint64_t fit_seed = 1;
    std::optional<int> fit_fixed_nh;
    bool fit_rob = false, fit_const = false;
    fit->add_option("--config", fit_config, "JSON run configuration; flags override");
    fit->add_option("--taus", fit_taus, "comma list; empty = every observation date");
    fit->add_option("--p", fit_p, "lag order: 1 | 6 | 12 | auto");
    fit->add_option("--alpha", fit_alpha, "CI level (default .1: 90% CIs)");
    fit->add_option("--nh-grid", fit_nh_grid, "empirical | simulation | comma list");
    fit->add_option("--fixed-nh", fit_fixed_nh, "skip selection and use this nh");
    fit->add_option("--c1", fit_c1, "undersmoothing quantile");
    fit->add_option("--c2", fit_c2, "undersmoothing scale");
    fit->add_option("--a", fit_a, "undersmoothing exponent");
    fit->add_option("--seed", fit_seed, "RNG seed (table simulation only)");
    fit->add_flag("--robustness", fit_rob, "add a block at floor(1.5*nh_us)");
    fit->add_flag("--constant-benchmark", fit_const, "add a constant-parameter block (nh=2n)");
    fit->add_option("--lb-residuals", fit_lb, "constant | tvp");
    fit->add_option("--output-prefix", fit_output, "writes <prefix>.csv and <prefix>.json");

    // ci -------------------------------------------------------------------
    auto* ci = app.add_subcommand("ci", "CI and MUE at given taus");
    InputFlags ci_in;
    TableFlags ci_tbl;
    ci_in.attach(ci);
    ci_tbl.attach(ci);
    std::string ci_taus = "0.2,0.4,0.6,0.8,1.0", ci_p = "1";
    double ci_alpha = 0.1;
    std::uint64_t ci_seed = 1;
    std::optional<int> ci_nh;
    ci->add_option("--taus", ci_taus, "comma list of taus in (0,1]");
    ci->add_option("--nh", ci_nh, "window size; default selects nh_us");
    ci->add_option("--p", ci_p, "lag order: 1 | 6 | 12");
    ci->add_option("--alpha", ci_alpha, "CI level");
    ci->add_option("--seed", ci_seed, "RNG seed");

    // bandwidth --------------------------------------------------------------
    auto* bw = app.add_subcommand("bandwidth", "forecast-error bandwidth selection report");
    InputFlags bw_in;
    bw_in.attach(bw);
    std::string bw_grid = "empirical", bw_output;
    double bw_c1 = 0.2, bw_c2 = 1.5, bw_a = 0.1;
    bw->add_option("--nh-grid", bw_grid, "empirical | simulation | comma list");
    bw->add_option("--c1", bw_c1, "undersmoothing quantile");
    bw->add_option("--c2", bw_c2, "undersmoothing scale");
    bw->add_option("--a", bw_a, "undersmoothing exponent");
    bw->add_option("--output", bw_output, "optional FE-per-nh CSV");

    // study ------------------------------------------------------------------
    auto* study = app.add_subcommand("study", "Monte Carlo coverage/length/bias study");
    TableFlags study_tbl;
    study_tbl.attach(study);
    std::string study_config, study_output;
    std::optional<int> study_reps;
    std::optional<std::uint64_t> study_seed;
    bool study_raw = false;
    study->add_option("--config", study_config, "JSON study configuration")->required();
    study->add_option("--reps", study_reps, "override replication count");
    study->add_option("--seed", study_seed, "override seed");
    study->add_option("--output", study_output, "override output CSV path");
    study->add_flag("--raw", study_raw, "also dump per-replication records");

    // gen-table ----------------------------------------------------------------
    auto* gen = app.add_subcommand("gen-table", "regenerate the limit-quantile table");
    std::string gen_psi = "embedded", gen_alphas = "embedded", gen_output = "table.csv";
    long gen_paths = 300000, gen_len = 25000;
    std::uint64_t gen_seed = 1;
    gen->add_option("--psi-grid", gen_psi, "`embedded` or comma list of psi values");
    gen->add_option("--alphas", gen_alphas, "`embedded` or comma list of levels");
    gen->add_option("--B", gen_paths, "number of simulated paths per psi");
    gen->add_option("--n", gen_len, "path length");
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--output", gen_output, "output CSV path");

    // ljung-box ------------------------------------------------------------------
    auto* lb = app.add_subcommand("ljung-box", "residual autocorrelation diagnostics");
    InputFlags lb_in;
    lb_in.attach(lb);
    std::string lb_p, lb_mode = "constant";
    int lb_lags = 6;
    std::optional<int> lb_nh;
    lb->add_option("--p", lb_p, "comma list of lag orders (default 1,6,12)");
    lb->add_option("--lags", lb_lags, "Ljung-Box lag count");
    lb->add_option("--residuals", lb_mode, "constant | tvp");
    lb->add_option("--nh", lb_nh, "window size for tvp residuals");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (fit->parsed())
            return run_fit(fit, fit_in, fit_tbl, fit_config, fit_taus, fit_p, fit_alpha,
                           fit_nh_grid, fit_fixed_nh, fit_c1, fit_c2, fit_a, fit_seed, fit_rob,
                           fit_const, fit_lb, fit_output);
        if (ci->parsed())
            return run_ci(ci_in, ci_tbl, ci_taus, ci_nh, ci_p, ci_alpha, ci_seed);
        if (bw->parsed()) return run_bandwidth(bw_in, bw_grid, bw_c1, bw_c2, bw_a, bw_output);
        if (study->parsed())
            return run_study_cmd(study_config, study_reps, study_seed, study_output, study_raw,
                                 study_tbl);
        if (gen->parsed())
            return run_gen_table(gen_psi, gen_alphas, gen_paths, gen_len, gen_seed, gen_output);
        if (lb->parsed()) return run_ljung_box(lb_in, lb_p, lb_lags, lb_mode, lb_nh);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
