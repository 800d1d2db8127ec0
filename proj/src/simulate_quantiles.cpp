#include <algorithm>
#include <cmath>
#include <vector>

#include "tvpar/errors.hpp"
#include "tvpar/limit.hpp"
#include "tvpar/local.hpp"
#include "tvpar/math.hpp"
#include "tvpar/parallel.hpp"
#include "tvpar/rng.hpp"

namespace tvpar {

namespace {

// One path: stationary-start AR(1) with coefficient rho, then the
// full-sample t-statistic at the true rho. The buffer holds Y_0..Y_n, so the
// regression window [2, n+1] uses exactly n observation pairs.
double simulate_t_stat(double psi, double rho, long path_length, Rng& rng,
                       std::vector<double>& buffer) {
    const auto len = static_cast<std::size_t>(path_length) + 1;
    buffer.resize(len);
    if (psi > 0.0) {
        buffer[0] = rng.next_gaussian() / std::sqrt(1.0 - rho * rho);
    } else {
        // the psi = 0 limit law is free of the initial condition
        buffer[0] = 0.0;
    }
    for (std::size_t t = 1; t < len; ++t)
        buffer[t] = rho * buffer[t - 1] + rng.next_gaussian();

    Window window;
    window.t1 = 2;
    window.t2 = len;
    window.nh_nominal = static_cast<int>(path_length);
    const LocalFit fit = local_fit_span(buffer, window);
    return t_stat(fit, rho);
}

}  // namespace

QuantileTable simulate_quantiles(const std::vector<double>& psi_grid,
                                 const std::vector<double>& alphas, long num_paths,
                                 long path_length, std::uint64_t seed) {
    if (num_paths < 1000) raise(Errc::InvalidGrid, "simulate_quantiles: need at least 1000 paths");
    if (path_length < 500)
        raise(Errc::InvalidGrid, "simulate_quantiles: path length must be at least 500");
    if (psi_grid.empty()) raise(Errc::InvalidGrid, "simulate_quantiles: empty psi grid");
    for (std::size_t i = 0; i < psi_grid.size(); ++i) {
        if (!std::isfinite(psi_grid[i]) || psi_grid[i] < 0.0)
            raise(Errc::InvalidGrid, "simulate_quantiles: psi must be finite and >= 0");
        if (i > 0 && !(psi_grid[i] > psi_grid[i - 1]))
            raise(Errc::InvalidGrid, "simulate_quantiles: psi grid must be strictly increasing");
    }

    std::vector<std::vector<double>> values(psi_grid.size());
    const auto paths = static_cast<std::size_t>(num_paths);

    for (std::size_t psi_index = 0; psi_index < psi_grid.size(); ++psi_index) {
        const double psi = psi_grid[psi_index];
        const double rho = std::exp(-psi / static_cast<double>(path_length));
        std::vector<double> stats(paths);

        parallel_for(paths, [&](std::size_t begin, std::size_t end) {
            std::vector<double> buffer;
            for (std::size_t p = begin; p < end; ++p) {
                Rng rng = Rng::substream(seed, psi_index, p);
                stats[p] = simulate_t_stat(psi, rho, path_length, rng, buffer);
            }
        });

        std::sort(stats.begin(), stats.end());
        std::vector<double> row;
        row.reserve(alphas.size());
        for (const double alpha : alphas) row.push_back(quantile_type7_sorted(stats, alpha));
        values[psi_index] = std::move(row);
    }

    TableProvenance prov;
    prov.kind = TableProvenance::Kind::Simulated;
    prov.num_paths = num_paths;
    prov.path_length = path_length;
    prov.seed = seed;
    return QuantileTable(psi_grid, alphas, std::move(values), prov);
}

}  // namespace tvpar
