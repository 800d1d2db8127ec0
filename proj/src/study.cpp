#include "tvpar/study.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tvpar/csv.hpp"
#include "tvpar/errors.hpp"
#include "tvpar/math.hpp"
#include "tvpar/parallel.hpp"
#include "tvpar/rng.hpp"

namespace tvpar {

namespace {

struct RepOutcome {
    int nh_used = 0;
    std::vector<InferencePoint> points;  // one per tau
    bool bandwidth_failed = false;
};

RepOutcome run_rep(const DgpSpec& dgp, std::size_t dgp_index, std::size_t rep,
                   const StudyConfig& cfg, const BandwidthGrid& grid,
                   const QuantileTable& table, const Rho0Grid& rho_grid) {
    RepOutcome out;
    const PathRealization path = simulate_path(dgp, Rng::derive(cfg.seed, dgp_index, rep));

    if (cfg.fixed_nh) {
        out.nh_used = *cfg.fixed_nh;
    } else {
        try {
            out.nh_used = select_bandwidth(path.series, grid, cfg.c1, cfg.c2, cfg.a).h_us;
        } catch (const Error&) {
            out.bandwidth_failed = true;
            out.nh_used = grid.nh_values.front();
        }
    }
    out.points = trajectory(path.series, cfg.taus, out.nh_used, cfg.alpha, table, rho_grid);
    return out;
}

}  // namespace

StudyResult run_study(const StudyConfig& config, const QuantileTable& table) {
    if (config.reps < 1) raise(Errc::BadConfig, "study: reps must be >= 1");
    if (config.dgps.empty()) raise(Errc::BadConfig, "study: no DGPs given");
    if (config.taus.empty()) raise(Errc::BadConfig, "study: no tau values given");
    for (const double tau : config.taus)
        if (!(tau > 0.0 && tau <= 1.0)) raise(Errc::TauOutOfRange, "study: tau must be in (0,1]");

    const BandwidthGrid grid = config.nh_grid.empty() ? BandwidthGrid::simulation()
                                                      : BandwidthGrid(config.nh_grid);
    const Rho0Grid rho_grid = Rho0Grid::default_grid();
    const auto reps = static_cast<std::size_t>(config.reps);

    StudyResult result;
    for (std::size_t d = 0; d < config.dgps.size(); ++d) {
        const DgpSpec& dgp = config.dgps[d];
        std::vector<RepOutcome> outcomes(reps);

        parallel_for(reps, [&](std::size_t begin, std::size_t end) {
            for (std::size_t r = begin; r < end; ++r)
                outcomes[r] = run_rep(dgp, d, r, config, grid, table, rho_grid);
        });

        std::vector<double> nh_values;
        nh_values.reserve(reps);
        for (const auto& o : outcomes) nh_values.push_back(static_cast<double>(o.nh_used));

        for (std::size_t ti = 0; ti < config.taus.size(); ++ti) {
            const double tau = config.taus[ti];
            const double rho_true = rho_function(dgp, tau);

            McCell cell;
            cell.dgp = dgp.name();
            cell.tau = tau;
            cell.rho_true = rho_true;
            cell.reps = config.reps;

            long covered = 0;
            KahanSum length_sum, mad_lo_sum, mad_up_sum;
            std::vector<double> deviations;
            deviations.reserve(reps);
            long valid = 0, with_interval = 0;

            for (std::size_t r = 0; r < reps; ++r) {
                const InferencePoint& pt = outcomes[r].points[ti];
                if (!pt.valid || outcomes[r].bandwidth_failed) {
                    ++cell.failures;
                    continue;
                }
                // an empty acceptance set is a valid non-covering outcome;
                // it has no length to average
                ++valid;
                const bool is_covered =
                    !pt.ci_empty && pt.ci_low <= rho_true && rho_true <= pt.ci_high;
                if (is_covered) ++covered;
                if (!pt.ci_empty) {
                    length_sum.add(pt.ci_high - pt.ci_low);
                    ++with_interval;
                }
                const double dev = pt.mue_point - rho_true;
                deviations.push_back(dev);
                if (dev < 0.0) mad_lo_sum.add(-dev);
                if (dev > 0.0) mad_up_sum.add(dev);

                if (config.collect_raw) {
                    RawRecord raw;
                    raw.dgp = cell.dgp;
                    raw.rep = static_cast<int>(r);
                    raw.tau = tau;
                    raw.nh_used = outcomes[r].nh_used;
                    raw.rho_true = rho_true;
                    raw.rho_hat = pt.rho_hat;
                    raw.ci_low = pt.ci_low;
                    raw.ci_high = pt.ci_high;
                    raw.mue_point = pt.mue_point;
                    raw.covered = is_covered;
                    raw.valid = true;
                    result.raw.push_back(raw);
                }
            }

            if (valid > 0) {
                const double dv = static_cast<double>(valid);
                cell.coverage = static_cast<double>(covered) / dv;
                cell.abs_median_bias = std::abs(median(deviations));
                cell.mad_lower = 2.0 * mad_lo_sum.value() / dv;
                cell.mad_upper = 2.0 * mad_up_sum.value() / dv;
            }
            if (with_interval > 0)
                cell.avg_length = length_sum.value() / static_cast<double>(with_interval);
            cell.median_nh_us = median(nh_values);
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

void write_study_csv(const StudyResult& result, const std::string& path, bool with_raw) {
    std::ofstream out(path);
    if (!out) raise(Errc::BadData, "cannot open for writing: " + path);
    out << "dgp,tau,coverage,avg_length,abs_median_bias,mad_lower,mad_upper,median_nh_us,reps\n";
    for (const auto& c : result.cells)
        out << c.dgp << ',' << format_g17(c.tau) << ',' << format_g17(c.coverage) << ','
            << format_g17(c.avg_length) << ',' << format_g17(c.abs_median_bias) << ','
            << format_g17(c.mad_lower) << ',' << format_g17(c.mad_upper) << ','
            << format_g17(c.median_nh_us) << ',' << c.reps << '\n';

    if (with_raw) {
        std::ofstream raw_out(path + ".raw.csv");
        if (!raw_out) raise(Errc::BadData, "cannot open for writing: " + path + ".raw.csv");
        raw_out << "dgp,rep,tau,nh_used,rho_true,rho_hat,ci_low,ci_high,mue_point,covered\n";
        for (const auto& r : result.raw)
            raw_out << r.dgp << ',' << r.rep << ',' << format_g17(r.tau) << ',' << r.nh_used
                    << ',' << format_g17(r.rho_true) << ',' << format_g17(r.rho_hat) << ','
                    << format_g17(r.ci_low) << ',' << format_g17(r.ci_high) << ','
                    << format_g17(r.mue_point) << ',' << (r.covered ? 1 : 0) << '\n';
    }
}

}  // namespace tvpar
