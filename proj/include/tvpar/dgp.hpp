#pragma once

#include <cstdint>
#include <string>

#include "tvpar/series.hpp"

namespace tvpar {

/// Shape families for the time-varying AR coefficient rho(u), u = t/n.
enum class RhoShape {
    Flat,        // rho(u) = a
    Linear,      // a + (b-a)u
    FlatLinear,  // a on [0,.5], then linear a -> b on (.5,1]
    Kinked,      // linear a -> b on [0,.5], then b -> c on (.5,1]
    Sinusoid,    // m + A sin(2.5 pi u); value a at u=.2, b at u=.6, a again at u=1
};

/// A Monte Carlo data-generating process: (rho(.), mu*(.), sigma(.)) plus the
/// sample size. The recursion is Y_t = mu*_t + rho_t Y_{t-1} + sigma_t U_t
/// with U_t iid N(0,1). With tv_mu_sigma set, mu* runs linearly from -.1 to
/// .1 and sigma from .95 to 1.05; otherwise mu* = 0 and sigma = 1.
struct DgpSpec {
    RhoShape shape = RhoShape::Flat;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    bool tv_mu_sigma = false;
    std::size_t n = 0;

    static DgpSpec flat(double level, std::size_t n, bool tv = false);
    static DgpSpec linear(double from, double to, std::size_t n, bool tv = false);
    static DgpSpec flat_linear(double level, double to, std::size_t n, bool tv = false);
    static DgpSpec kinked(double from, double mid, double to, std::size_t n, bool tv = false);
    static DgpSpec sinusoid(double at02, double at06, double at10, std::size_t n,
                            bool tv = false);

    std::string name() const;
};

/// Throws BadConfig unless rho stays in [-1,1] and sigma stays positive on
/// [0,1], and (for sinusoids) the u=1 anchor equals the u=.2 anchor, which
/// the 2.5*pi frequency forces.
void validate_dgp(const DgpSpec& spec);

double rho_function(const DgpSpec& spec, double u);
double mu_star_function(const DgpSpec& spec, double u);
double sigma_function(const DgpSpec& spec, double u);

struct PathRealization {
    TimeSeries series;            // Y_1..Y_n
    double y0 = 0.0;              // stationary-start initial condition
    bool explosive_init = false;  // mean rho^2 >= 1; fell back to Y0 = 0
};

/// Simulates one path, deterministic given the seed. Y0 is drawn from
/// N(0, 1/(1 - rho_bar^2)) with rho_bar the average of rho_t over the sample;
/// if rho_bar^2 >= 1 the start falls back to Y0 = 0 with a flag.
PathRealization simulate_path(const DgpSpec& spec, std::uint64_t seed);

}  // namespace tvpar
